#pragma once

// Backtracking over distance vectors in fixed pair order. Every triangle
// constraint |a-b| <= c <= a+b is an interval constraint, so each open pair
// carries an interval [lo, hi] intersected over the triangles whose other two
// sides are already assigned.

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmetric/core.hpp"

namespace rmetric::detail {

struct SearchSpace {
  int n = 1;
  Color lo = 1;  // initial domain of every pair
  Color hi = 1;
  std::uint64_t node_budget = 0;
};

class NodeMeter {
 public:
  explicit NodeMeter(std::uint64_t budget) : budget_(budget) {}
  // Throws CapacityError once the shared total passes the budget.
  void charge(std::uint64_t nodes);
  std::uint64_t total() const { return total_.load(); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> total_{0};
};

class IntervalSearch {
 public:
  IntervalSearch(const SearchSpace& space, NodeMeter& meter);
  ~IntervalSearch();

  std::size_t pair_count() const { return values_.size(); }

  // Assigns the next pair. Returns false (with state already rolled back) if
  // some open interval became empty.
  bool push(Color v);
  void pop();

  std::size_t depth() const { return depth_; }
  Color lo() const { return lo_[depth_]; }
  Color hi() const { return hi_[depth_]; }
  std::span<const std::uint8_t> values() const { return values_; }

  // Number of completions of the current partial assignment.
  std::uint64_t count_completions();

  // Visits completions in lexicographic order; stops when visit returns false.
  bool visit_completions(const std::function<bool(std::span<const std::uint8_t>)>& visit);

 private:
  struct Tighten {
    std::uint32_t known;
    std::uint32_t target;
  };
  struct Saved {
    std::uint32_t pair;
    std::uint8_t lo;
    std::uint8_t hi;
  };

  void charge();

  NodeMeter& meter_;
  std::vector<std::vector<Tighten>> propagate_;
  std::vector<std::uint8_t> values_;
  std::vector<std::uint8_t> lo_;
  std::vector<std::uint8_t> hi_;
  std::vector<Saved> trail_;
  std::vector<std::size_t> marks_;
  std::size_t depth_ = 0;
  std::uint64_t pending_nodes_ = 0;
};

struct ParallelPlan {
  unsigned threads = 1;
  int split_depth = -1;  // -1: choose automatically
};

// Counts all metric colorings in the space.
std::uint64_t parallel_count(const SearchSpace& space, const ParallelPlan& plan);

// Counts the complete assignments accepted by a thread-safe predicate.
std::uint64_t parallel_count_if(const SearchSpace& space, const ParallelPlan& plan,
                                const std::function<bool(std::span<const std::uint8_t>)>& accept);

// Serial lexicographic traversal.
void for_each_assignment(const SearchSpace& space,
                         const std::function<bool(std::span<const std::uint8_t>)>& visit);

}  // namespace rmetric::detail
