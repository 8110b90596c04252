#include "search.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "rmetric/errors.hpp"

namespace rmetric::detail {

namespace {
constexpr std::uint64_t kMeterBatch = 1u << 12;
}

void NodeMeter::charge(std::uint64_t nodes) {
  const std::uint64_t now = total_.fetch_add(nodes) + nodes;
  if (now > budget_) {
    throw CapacityError("search exceeded its node budget of " + std::to_string(budget_) +
                        "; raise --budget or shrink the instance");
  }
}

IntervalSearch::IntervalSearch(const SearchSpace& space, NodeMeter& meter) : meter_(meter) {
  const int n = space.n;
  const std::size_t pairs = choose2(static_cast<std::size_t>(n));
  values_.assign(pairs, 0);
  lo_.assign(pairs, static_cast<std::uint8_t>(space.lo));
  hi_.assign(pairs, static_cast<std::uint8_t>(space.hi));
  propagate_.resize(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto [i, j] = pair_vertices(n, p);
    for (Vertex k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const auto q1 = static_cast<std::uint32_t>(pair_index(n, i, k));
      const auto q2 = static_cast<std::uint32_t>(pair_index(n, j, k));
      // Pairs before p are assigned when p is; pairs after p are open.
      if (q1 < p && q2 > p) propagate_[p].push_back({q1, q2});
      if (q2 < p && q1 > p) propagate_[p].push_back({q2, q1});
    }
  }
}

IntervalSearch::~IntervalSearch() {
  if (pending_nodes_ != 0 && std::uncaught_exceptions() == 0) {
    try {
      meter_.charge(pending_nodes_);
    } catch (...) {
    }
  }
}

void IntervalSearch::charge() {
  if (++pending_nodes_ >= kMeterBatch) {
    const std::uint64_t n = pending_nodes_;
    pending_nodes_ = 0;
    meter_.charge(n);
  }
}

bool IntervalSearch::push(Color v) {
  charge();
  const std::size_t p = depth_;
  marks_.push_back(trail_.size());
  values_[p] = static_cast<std::uint8_t>(v);
  ++depth_;
  for (const auto& [known, target] : propagate_[p]) {
    const int a = values_[known];
    const int lo = std::max<int>(lo_[target], std::abs(v - a));
    const int hi = std::min<int>(hi_[target], v + a);
    if (lo > lo_[target] || hi < hi_[target]) {
      trail_.push_back({target, lo_[target], hi_[target]});
      lo_[target] = static_cast<std::uint8_t>(std::min(lo, 255));
      hi_[target] = static_cast<std::uint8_t>(std::max(hi, 0));
      if (lo > hi) {
        pop();
        return false;
      }
    }
  }
  return true;
}

void IntervalSearch::pop() {
  const std::size_t mark = marks_.back();
  marks_.pop_back();
  while (trail_.size() > mark) {
    const Saved& s = trail_.back();
    lo_[s.pair] = s.lo;
    hi_[s.pair] = s.hi;
    trail_.pop_back();
  }
  --depth_;
  values_[depth_] = 0;
}

std::uint64_t IntervalSearch::count_completions() {
  const std::size_t pairs = values_.size();
  if (depth_ == pairs) return 1;
  // The last pair has no open pair left to constrain: its interval is exact.
  if (depth_ + 1 == pairs) return static_cast<std::uint64_t>(hi_[depth_] - lo_[depth_] + 1);
  std::uint64_t total = 0;
  const int lo = lo_[depth_];
  const int hi = hi_[depth_];
  for (int v = lo; v <= hi; ++v) {
    if (!push(v)) continue;
    total += count_completions();
    pop();
  }
  return total;
}

bool IntervalSearch::visit_completions(
    const std::function<bool(std::span<const std::uint8_t>)>& visit) {
  if (depth_ == values_.size()) return visit(values_);
  const int lo = lo_[depth_];
  const int hi = hi_[depth_];
  for (int v = lo; v <= hi; ++v) {
    if (!push(v)) continue;
    const bool keep_going = visit_completions(visit);
    pop();
    if (!keep_going) return false;
  }
  return true;
}

namespace {

using Prefix = std::vector<std::uint8_t>;

std::vector<Prefix> collect_prefixes(const SearchSpace& space, NodeMeter& meter, std::size_t depth) {
  IntervalSearch search(space, meter);
  std::vector<Prefix> out;
  auto dfs = [&](auto&& self) -> void {
    if (search.depth() == depth) {
      out.emplace_back(search.values().begin(), search.values().begin() + static_cast<long>(depth));
      return;
    }
    const int lo = search.lo();
    const int hi = search.hi();
    for (int v = lo; v <= hi; ++v) {
      if (!search.push(v)) continue;
      self(self);
      search.pop();
    }
  };
  dfs(dfs);
  return out;
}

std::size_t choose_split_depth(const SearchSpace& space, const ParallelPlan& plan) {
  const std::size_t pairs = choose2(static_cast<std::size_t>(space.n));
  if (plan.split_depth >= 0) return std::min<std::size_t>(static_cast<std::size_t>(plan.split_depth), pairs);
  if (plan.threads <= 1 || pairs < 2) return 0;
  // Aim for at least 16 tasks per thread from the raw branching factor.
  const double width = std::max(1, space.hi - space.lo + 1);
  std::size_t depth = 0;
  double tasks = 1.0;
  while (depth + 1 < pairs && tasks < 16.0 * plan.threads) {
    tasks *= width;
    ++depth;
  }
  return depth;
}

template <class TaskFn>
std::uint64_t run_tasks(const SearchSpace& space, const ParallelPlan& plan, TaskFn&& task) {
  NodeMeter meter(space.node_budget);
  const std::size_t depth = choose_split_depth(space, plan);
  const std::vector<Prefix> prefixes = collect_prefixes(space, meter, depth);
  std::vector<std::uint64_t> results(prefixes.size(), 0);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      IntervalSearch search(space, meter);
      for (std::size_t t = next++; t < prefixes.size() && !failed; t = next++) {
        for (std::uint8_t v : prefixes[t]) {
          // Prefixes were produced by the same propagation, so replay succeeds.
          search.push(v);
        }
        results[t] = task(search);
        for (std::size_t i = 0; i < prefixes[t].size(); ++i) search.pop();
      }
    } catch (...) {
      failed = true;
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(prefixes.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::uint64_t total = 0;
  for (std::uint64_t r : results) total += r;
  return total;
}

}  // namespace

std::uint64_t parallel_count(const SearchSpace& space, const ParallelPlan& plan) {
  return run_tasks(space, plan, [](IntervalSearch& s) { return s.count_completions(); });
}

std::uint64_t parallel_count_if(const SearchSpace& space, const ParallelPlan& plan,
                                const std::function<bool(std::span<const std::uint8_t>)>& accept) {
  return run_tasks(space, plan, [&](IntervalSearch& s) {
    std::uint64_t hits = 0;
    s.visit_completions([&](std::span<const std::uint8_t> values) {
      if (accept(values)) ++hits;
      return true;
    });
    return hits;
  });
}

void for_each_assignment(const SearchSpace& space,
                         const std::function<bool(std::span<const std::uint8_t>)>& visit) {
  NodeMeter meter(space.node_budget);
  IntervalSearch search(space, meter);
  search.visit_completions(visit);
}

}  // namespace rmetric::detail
