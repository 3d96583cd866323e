#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace extscope {

// Error taxonomy. The CLI maps these to exit codes:
//   ParseError -> 2, ComputationError (and subclasses) -> 3,
//   expectation failures are reported, not thrown -> 1.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

struct ComputationError : std::runtime_error {
  explicit ComputationError(const std::string& m) : std::runtime_error(m) {}
};

// Degree cap tripped inside the basis engine.
struct DegreeCapError : ComputationError {
  explicit DegreeCapError(const std::string& m) : ComputationError(m) {}
};

// Homological window too small for a requested computation.
struct WindowError : ComputationError {
  explicit WindowError(const std::string& m) : ComputationError(m) {}
};

// Violated internal invariant (e.g. the two grade routes disagree).
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& m) : std::logic_error(m) {}
};

struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& m) : std::invalid_argument(m) {}
};

// Lazily computed, thread-safe, shared across copies of the owning object.
template <class T>
class Memo {
  struct Cell {
    std::mutex mu;
    std::optional<T> val;
  };
  std::shared_ptr<Cell> cell_ = std::make_shared<Cell>();

 public:
  const T& get(const std::function<T()>& make) const {
    std::lock_guard<std::mutex> lock(cell_->mu);
    if (!cell_->val) cell_->val = make();
    return *cell_->val;
  }
  bool ready() const {
    std::lock_guard<std::mutex> lock(cell_->mu);
    return cell_->val.has_value();
  }
};

// Sentinel for depth/grade of the zero module.
inline constexpr int kInfinity = INT32_MAX;

inline std::string int_or_inf(int v) {
  return v == kInfinity ? "inf" : std::to_string(v);
}

}  // namespace extscope
