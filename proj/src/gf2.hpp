#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mrphase::gf2 {

class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void flip(std::size_t k) { words_[k / 64] ^= (std::uint64_t{1} << (k % 64)); }
    bool test(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1U; }
    void xor_with(const BitRow& other);
    bool any() const;
    std::optional<std::size_t> lowest() const;

private:
    std::vector<std::uint64_t> words_;
};

// Incremental Gaussian elimination over GF(2).
class System {
public:
    explicit System(std::size_t vars) : vars_(vars) {}

    // Adds sum(row) = rhs. Returns false once the system is inconsistent.
    bool add(BitRow row, bool rhs);
    bool consistent() const noexcept { return consistent_; }
    // One solution with free variables set to 0.
    std::optional<std::vector<std::uint8_t>> solve() const;

private:
    struct Pivot {
        std::size_t column;
        BitRow row;
        bool rhs;
    };
    std::size_t vars_;
    std::vector<Pivot> pivots_;
    std::vector<std::optional<std::size_t>> pivot_of_column_;
    bool consistent_ = true;
};

// For each row, whether it takes part in some linear dependency among the rows.
std::vector<bool> rows_in_dependencies(const std::vector<BitRow>& rows, std::size_t vars);

}  // namespace mrphase::gf2
