#include "gf2.hpp"

#include <algorithm>
#include <bit>

namespace mrphase::gf2 {

void BitRow::xor_with(const BitRow& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

bool BitRow::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

std::optional<std::size_t> BitRow::lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
}

bool System::add(BitRow row, bool rhs) {
    if (!consistent_) return false;
    if (pivot_of_column_.empty()) pivot_of_column_.assign(vars_, std::nullopt);
    for (;;) {
        auto low = row.lowest();
        if (!low) {
            if (rhs) consistent_ = false;
            return consistent_;
        }
        auto p = pivot_of_column_[*low];
        if (!p) {
            pivot_of_column_[*low] = pivots_.size();
            pivots_.push_back(Pivot{*low, std::move(row), rhs});
            return true;
        }
        row.xor_with(pivots_[*p].row);
        rhs ^= pivots_[*p].rhs;
    }
}

std::optional<std::vector<std::uint8_t>> System::solve() const {
    if (!consistent_) return std::nullopt;
    std::vector<std::uint8_t> x(vars_, 0);
    // Every pivot row's other set bits lie in higher columns, so assign
    // pivots from the highest column down.
    std::vector<const Pivot*> order;
    order.reserve(pivots_.size());
    for (const auto& p : pivots_) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Pivot* a, const Pivot* b) { return a->column > b->column; });
    for (const Pivot* p : order) {
        bool value = p->rhs;
        for (std::size_t k = p->column + 1; k < vars_; ++k)
            if (p->row.test(k) && x[k]) value = !value;
        x[p->column] = value ? 1 : 0;
    }
    return x;
}

std::vector<bool> rows_in_dependencies(const std::vector<BitRow>& rows, std::size_t vars) {
    const std::size_t n = rows.size();
    std::vector<bool> out(n, false);
    struct Entry {
        BitRow row;
        BitRow combination;
    };
    std::vector<std::optional<Entry>> pivot(vars);
    for (std::size_t r = 0; r < n; ++r) {
        Entry e{rows[r], BitRow(n)};
        e.combination.flip(r);
        for (;;) {
            auto low = e.row.lowest();
            if (!low) {
                // e.combination is a dependency: every row in it is non-coloop.
                for (std::size_t k = 0; k < n; ++k)
                    if (e.combination.test(k)) out[k] = true;
                break;
            }
            if (!pivot[*low]) {
                pivot[*low] = std::move(e);
                break;
            }
            e.row.xor_with(pivot[*low]->row);
            e.combination.xor_with(pivot[*low]->combination);
        }
    }
    return out;
}

}  // namespace mrphase::gf2
