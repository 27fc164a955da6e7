#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrphase {

// Broken pedigree structure: cycles, one-parent individuals, unknown parents,
// row-count mismatches.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what, int individual_id = 0);
    int individual_id() const noexcept { return individual_id_; }

private:
    int individual_id_;
};

// Genotypes that no haplotype configuration explains. Site is 1-based.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, int individual_id, std::size_t site);
    int individual_id() const noexcept { return individual_id_; }
    std::size_t site() const noexcept { return site_; }

private:
    int individual_id_;
    std::size_t site_;
};

// Malformed instance text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// No respectful bipartization with at most max_k removals.
class BoundExceeded : public std::runtime_error {
public:
    explicit BoundExceeded(std::size_t bound);
    std::size_t bound() const noexcept { return bound_; }

private:
    std::size_t bound_;
};

// Exhaustive enumeration refused because the search space is too large.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t size, std::size_t budget);
    std::size_t size() const noexcept { return size_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t size_;
    std::size_t budget_;
};

}  // namespace mrphase
