#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace goodlabel {

/// A precondition on an argument was violated.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search hit its configured limit. Never replaced by an
/// approximate answer.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The nice-walk set is infinite; carries a closed nice walk v0..vt, v0 == vt.
class unbounded_walks : public std::runtime_error {
 public:
  explicit unbounded_walks(std::vector<std::uint32_t> closed_walk)
      : std::runtime_error("unbounded walk set: labelling admits a closed nice walk"),
        closed_walk_(std::move(closed_walk)) {}

  const std::vector<std::uint32_t>& closed_walk() const noexcept { return closed_walk_; }

 private:
  std::vector<std::uint32_t> closed_walk_;
};

}  // namespace goodlabel
