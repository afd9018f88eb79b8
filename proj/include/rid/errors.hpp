#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rid {

/// Raised when a caller breaks an operation's preconditions (shapes, ranges,
/// parameter domains).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by file readers/writers.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sketch ran out of numerically independent columns before the target
/// rank was reached.
class RankDeficientSketch : public std::runtime_error {
 public:
  explicit RankDeficientSketch(std::size_t achieved_rank)
      : std::runtime_error("sketch is rank deficient: achieved rank " +
                           std::to_string(achieved_rank)),
        achieved_rank_(achieved_rank) {}

  std::size_t achieved_rank() const noexcept { return achieved_rank_; }

 private:
  std::size_t achieved_rank_;
};

/// Rank failure that survived the re-randomization retry.
class RankDeficient : public std::runtime_error {
 public:
  explicit RankDeficient(std::size_t achieved_rank)
      : std::runtime_error("matrix is rank deficient after retry: achieved rank " +
                           std::to_string(achieved_rank)),
        achieved_rank_(achieved_rank) {}

  std::size_t achieved_rank() const noexcept { return achieved_rank_; }

 private:
  std::size_t achieved_rank_;
};

class SingularTriangular : public std::runtime_error {
 public:
  explicit SingularTriangular(std::size_t index)
      : std::runtime_error("triangular factor is numerically singular at diagonal " +
                           std::to_string(index)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace detail
}  // namespace rid
