#include "mrphase/errors.hpp"

namespace mrphase {

StructuralError::StructuralError(const std::string& what, int individual_id)
    : std::runtime_error(what), individual_id_(individual_id) {}

DataError::DataError(const std::string& what, int individual_id, std::size_t site)
    : std::runtime_error(what), individual_id_(individual_id), site_(site) {}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

BoundExceeded::BoundExceeded(std::size_t bound)
    : std::runtime_error("no respectful bipartization with at most max_k = " + std::to_string(bound) +
                         " removed edges"),
      bound_(bound) {}

BudgetExceeded::BudgetExceeded(const std::string& what, std::size_t size, std::size_t budget)
    : std::runtime_error(what + " (" + std::to_string(size) + " exceeds budget " +
                         std::to_string(budget) + ")"),
      size_(size),
      budget_(budget) {}

}  // namespace mrphase
