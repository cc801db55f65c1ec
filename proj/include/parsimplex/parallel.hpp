// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <barrier>
#include <cstddef>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "parsimplex/lp_model.hpp"
#include "parsimplex/tableau.hpp"

namespace parsimplex::parallel {

/// Dynamic guided partitioner over [0, total): each claim hands out the next
/// max(ceil(remaining / (2 * workers)), chunk_min) elements (clamped to what
/// remains), so chunk sizes shrink toward the tail. Claims are disjoint and
/// cover the range exactly once.
class GuidedSchedule {
 public:
  GuidedSchedule() = default;
  GuidedSchedule(std::size_t total, unsigned workers, std::size_t chunk_min) {
    configure(workers, chunk_min);
    reset(total);
  }

  void configure(unsigned workers, std::size_t chunk_min) {
    divisor_ = 2 * static_cast<std::size_t>(workers);
    chunk_min_ = chunk_min > 0 ? chunk_min : 1;
  }

  void reset(std::size_t total) {
    total_ = total;
    next_.store(0, std::memory_order_relaxed);
  }

  /// Claims the next chunk as [begin, end). False once the range is spent.
  bool claim(std::size_t& begin, std::size_t& end) {
    std::size_t cur = next_.load(std::memory_order_relaxed);
    while (cur < total_) {
      const std::size_t remaining = total_ - cur;
      std::size_t size = (remaining + divisor_ - 1) / divisor_;
      if (size < chunk_min_) size = chunk_min_;
      if (size > remaining) size = remaining;
      if (next_.compare_exchange_weak(cur, cur + size, std::memory_order_relaxed)) {
        begin = cur;
        end = cur + size;
        return true;
      }
    }
    return false;
  }

  std::size_t total() const { return total_; }

 private:
  std::atomic<std::size_t> next_{0};
  std::size_t total_ = 0;
  std::size_t divisor_ = 2;
  std::size_t chunk_min_ = 64;
};

/// Centralized sense-reversing barrier that spins (with a yield fallback for
/// oversubscribed teams). The phase loop crosses a barrier five times per
/// pivot, so the microseconds-per-crossing of a sleeping barrier would
/// dominate small iterations.
class SpinBarrier {
 public:
  explicit SpinBarrier(unsigned participants) : participants_(participants) {}

  void arrive_and_wait() {
    if (participants_ == 1) return;
    const unsigned generation = generation_.load(std::memory_order_acquire);
    if (arrived_.fetch_add(1, std::memory_order_acq_rel) + 1 == participants_) {
      arrived_.store(0, std::memory_order_relaxed);
      generation_.store(generation + 1, std::memory_order_release);
    } else {
      // Spin hard first: phases end within microseconds, and a sleeping
      // wait would dominate small pivots. Yield once the wait is long
      // enough to suggest an oversubscribed team.
      unsigned spins = 0;
      while (generation_.load(std::memory_order_acquire) == generation)
        if (++spins > 65536) std::this_thread::yield();
    }
  }

 private:
  unsigned participants_;
  std::atomic<unsigned> arrived_{0};
  std::atomic<unsigned> generation_{0};
};

/// Persistent team of P workers created once and kept alive until
/// destruction. The calling thread acts as worker 0; P-1 threads are
/// spawned. run() executes one job on every worker and returns when all are
/// done; inside a job, barrier() synchronizes the whole team.
class WorkerTeam {
 public:
  explicit WorkerTeam(unsigned threads, bool pin_threads = false);
  ~WorkerTeam();

  WorkerTeam(const WorkerTeam&) = delete;
  WorkerTeam& operator=(const WorkerTeam&) = delete;

  unsigned size() const { return size_; }

  void run(const std::function<void(unsigned)>& job);

  /// Full-team barrier, callable only from inside a job.
  void barrier() { phase_.arrive_and_wait(); }

 private:
  void worker_loop(unsigned id);

  unsigned size_;
  std::barrier<> gate_;
  SpinBarrier phase_;
  const std::function<void(unsigned)>* job_ = nullptr;
  bool shutdown_ = false;
  std::vector<std::thread> workers_;
};

/// Phase III result: either the minimum-ratio row plus the count of rows
/// whose pivot-column entry is at most eps_pivot, or unboundedness (count
/// reached m).
struct RatioScanResult {
  bool unbounded = false;
  std::size_t row = 0;
  std::size_t nonpositive_count = 0;
};

/// Phase VI result: the updated objective row's entering candidates under
/// both rules plus the count of entries below -eps_cost. negative_count == 0
/// means optimal.
struct FusedObjectiveResult {
  std::optional<std::size_t> entering;        // Dantzig: most negative, smallest index
  std::optional<std::size_t> entering_bland;  // smallest negative index
  std::size_t negative_count = 0;
};

// Standalone team executions of the individual phases. Each runs its phase
// across the team and joins; the integrated solve loop below strings the
// same kernels together inside a single team session, where phase V runs
// without an exit barrier. Results equal the serial operations in
// tableau.hpp for every thread count.

std::optional<std::size_t> team_entering_scan(const DenseTableau& tableau,
                                              WorkerTeam& team,
                                              const SolverConfig& config);

RatioScanResult team_ratio_scan(const DenseTableau& tableau, std::size_t k,
                                WorkerTeam& team, const SolverConfig& config);

void team_normalize_pivot_row(DenseTableau& tableau, std::size_t l,
                              std::size_t k, WorkerTeam& team,
                              const SolverConfig& config);

/// Updates constraint rows only; the objective row and basis[l] are phase VI
/// and bookkeeping concerns.
void team_eliminate_constraint_rows(DenseTableau& tableau, std::size_t l,
                                    std::size_t k, WorkerTeam& team,
                                    const SolverConfig& config);

/// One fused pass over the objective row: subtract obj[k] * pivot_row,
/// select the next entering candidates, count negatives.
FusedObjectiveResult team_fused_objective(DenseTableau& tableau, std::size_t l,
                                          std::size_t k, WorkerTeam& team,
                                          const SolverConfig& config);

/// The 6-phase parallel solve. Produces a SolveOutcome identical to
/// solve_serial (same status, same pivot sequence, bitwise-equal objective)
/// for every thread count.
SolveOutcome solve_parallel(const LpProblem& problem, const SolverConfig& config = {});

}  // namespace parsimplex::parallel
