// SPDX-License-Identifier: Apache-2.0
#include "parsimplex/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <limits>

#include "parsimplex/detail/row_kernels.hpp"

#ifdef __linux__
#include <pthread.h>
#include <sched.h>
#endif

namespace parsimplex::parallel {

using detail::better_min;

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Per-worker reduction slots, cache-line padded. A worker folds every chunk
// it claims into its own slot; a single section folds the slots in
// worker-index order, so the combined candidate is the lexicographic
// (value, index) minimum over all indices and therefore independent of how
// the guided schedule happened to hand out chunks.

struct alignas(64) RatioSlot {
  double best_ratio = 0.0;
  std::size_t best_row = kNone;
  std::size_t nonpositive = 0;

  void clear() {
    best_ratio = 0.0;
    best_row = kNone;
    nonpositive = 0;
  }
};

struct alignas(64) ObjectiveSlot {
  double best_value = 0.0;
  std::size_t best_col = kNone;
  std::size_t min_negative_col = kNone;
  std::size_t negatives = 0;

  void clear() {
    best_value = 0.0;
    best_col = kNone;
    min_negative_col = kNone;
    negatives = 0;
  }
};

// --- chunk kernels -------------------------------------------------------

void scan_objective_chunk(const double* obj, std::size_t begin, std::size_t end,
                          double eps_cost, ObjectiveSlot& slot) {
  for (std::size_t j = begin; j < end; ++j) {
    const double v = obj[j];
    if (v < -eps_cost) {
      ++slot.negatives;
      if (j < slot.min_negative_col) slot.min_negative_col = j;
      if (slot.best_col == kNone || better_min(v, j, slot.best_value, slot.best_col)) {
        slot.best_value = v;
        slot.best_col = j;
      }
    }
  }
}

void ratio_chunk(const DenseTableau& t, std::size_t k, double eps_pivot,
                 std::size_t begin, std::size_t end, RatioSlot& slot) {
  const std::size_t rhs = t.rhs_col();
  for (std::size_t i = begin; i < end; ++i) {
    const double a_ik = t.at(i, k);
    if (a_ik > eps_pivot) {
      const double ratio = t.at(i, rhs) / a_ik;
      if (slot.best_row == kNone || better_min(ratio, i, slot.best_ratio, slot.best_row)) {
        slot.best_ratio = ratio;
        slot.best_row = i;
      }
    } else {
      ++slot.nonpositive;
    }
  }
}

void normalize_chunk(double* pivot_row, std::size_t k, double pivot_value,
                     std::size_t begin, std::size_t end) {
  detail::divide_range(pivot_row, begin, end, pivot_value);
  if (k >= begin && k < end) pivot_row[k] = 1.0;
}

void eliminate_rows_chunk(DenseTableau& t, std::size_t l, std::size_t k,
                          const double* pivot_row, std::size_t begin,
                          std::size_t end) {
  const std::size_t cols = t.cols();
  for (std::size_t i = begin; i < end; ++i) {
    if (i == l) continue;
    double* row = t.row(i);
    const double factor = row[k];
    if (factor != 0.0) {
      detail::subtract_scaled_range(row, pivot_row, factor, 0, cols);
      row[k] = 0.0;
    }
  }
}

// Fused phase VI chunk: update obj[j] -= factor * pivot_row[j], then
// classify the updated entry (columns past n+m are the RHS and are updated
// but never candidates).
void fused_objective_chunk(double* obj, const double* pivot_row, std::size_t k,
                           double factor, std::size_t scan_limit,
                           double eps_cost, std::size_t begin, std::size_t end,
                           ObjectiveSlot& slot) {
  if (factor != 0.0) {
    detail::subtract_scaled_range(obj, pivot_row, factor, begin, end);
    if (k >= begin && k < end) obj[k] = 0.0;
  }
  const std::size_t scan_end = end < scan_limit ? end : scan_limit;
  if (begin < scan_end) scan_objective_chunk(obj, begin, scan_end, eps_cost, slot);
}

// --- slot folds ----------------------------------------------------------

struct ObjectiveFold {
  double best_value = 0.0;
  std::size_t best_col = kNone;
  std::size_t min_negative_col = kNone;
  std::size_t negatives = 0;
};

ObjectiveFold fold_objective(const std::vector<ObjectiveSlot>& slots) {
  ObjectiveFold out;
  for (const ObjectiveSlot& s : slots) {
    out.negatives += s.negatives;
    if (s.min_negative_col < out.min_negative_col)
      out.min_negative_col = s.min_negative_col;
    if (s.best_col != kNone &&
        (out.best_col == kNone ||
         better_min(s.best_value, s.best_col, out.best_value, out.best_col))) {
      out.best_value = s.best_value;
      out.best_col = s.best_col;
    }
  }
  return out;
}

struct RatioFold {
  double best_ratio = 0.0;
  std::size_t best_row = kNone;
  std::size_t nonpositive = 0;
};

RatioFold fold_ratio(const std::vector<RatioSlot>& slots) {
  RatioFold out;
  for (const RatioSlot& s : slots) {
    out.nonpositive += s.nonpositive;
    if (s.best_row != kNone &&
        (out.best_row == kNone ||
         better_min(s.best_ratio, s.best_row, out.best_ratio, out.best_row))) {
      out.best_ratio = s.best_ratio;
      out.best_row = s.best_row;
    }
  }
  return out;
}

void pin_to_cpu(unsigned index) {
#ifdef __linux__
  const unsigned ncpu = std::thread::hardware_concurrency();
  if (ncpu == 0) return;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(index % ncpu, &set);
  pthread_setaffinity_np(pthread_self(), sizeof set, &set);
#else
  (void)index;
#endif
}

}  // namespace

// --- WorkerTeam ----------------------------------------------------------

WorkerTeam::WorkerTeam(unsigned threads, bool pin_threads)
    : size_(threads == 0 ? 1 : threads),
      gate_(static_cast<std::ptrdiff_t>(size_ == 0 ? 1 : size_)),
      phase_(static_cast<std::ptrdiff_t>(size_ == 0 ? 1 : size_)) {
  workers_.reserve(size_ - 1);
  for (unsigned id = 1; id < size_; ++id)
    workers_.emplace_back([this, id, pin_threads] {
      if (pin_threads) pin_to_cpu(id);
      worker_loop(id);
    });
}

WorkerTeam::~WorkerTeam() {
  shutdown_ = true;
  gate_.arrive_and_wait();
  for (std::thread& w : workers_) w.join();
}

void WorkerTeam::run(const std::function<void(unsigned)>& job) {
  job_ = &job;
  gate_.arrive_and_wait();  // release workers into the job
  try {
    job(0);
  } catch (...) {
    gate_.arrive_and_wait();
    throw;
  }
  gate_.arrive_and_wait();  // wait for the team to finish
}

void WorkerTeam::worker_loop(unsigned id) {
  for (;;) {
    gate_.arrive_and_wait();
    if (shutdown_) return;
    try {
      (*job_)(id);
    } catch (...) {
      std::fprintf(stderr, "parsimplex: worker %u job threw\n", id);
    }
    gate_.arrive_and_wait();
  }
}

// --- standalone phase executions ------------------------------------------

std::optional<std::size_t> team_entering_scan(const DenseTableau& t,
                                              WorkerTeam& team,
                                              const SolverConfig& config) {
  GuidedSchedule sched(t.n + t.m, team.size(), config.chunk_min);
  std::vector<ObjectiveSlot> slots(team.size());
  const double* obj = t.row(t.objective_row());
  team.run([&](unsigned w) {
    std::size_t b, e;
    while (sched.claim(b, e))
      scan_objective_chunk(obj, b, e, config.eps_cost, slots[w]);
  });
  const ObjectiveFold fold = fold_objective(slots);
  if (fold.best_col == kNone) return std::nullopt;
  return fold.best_col;
}

RatioScanResult team_ratio_scan(const DenseTableau& t, std::size_t k,
                                WorkerTeam& team, const SolverConfig& config) {
  GuidedSchedule sched(t.m, team.size(), config.chunk_min);
  std::vector<RatioSlot> slots(team.size());
  team.run([&](unsigned w) {
    std::size_t b, e;
    while (sched.claim(b, e))
      ratio_chunk(t, k, config.eps_pivot, b, e, slots[w]);
  });
  const RatioFold fold = fold_ratio(slots);
  RatioScanResult out;
  out.nonpositive_count = fold.nonpositive;
  if (fold.best_row == kNone) {
    out.unbounded = true;
  } else {
    out.row = fold.best_row;
  }
  return out;
}

void team_normalize_pivot_row(DenseTableau& t, std::size_t l, std::size_t k,
                              WorkerTeam& team, const SolverConfig& config) {
  GuidedSchedule sched(t.cols(), team.size(), config.chunk_min);
  double* pivot_row = t.row(l);
  const double pivot_value = pivot_row[k];
  team.run([&](unsigned) {
    std::size_t b, e;
    while (sched.claim(b, e)) normalize_chunk(pivot_row, k, pivot_value, b, e);
  });
}

void team_eliminate_constraint_rows(DenseTableau& t, std::size_t l,
                                    std::size_t k, WorkerTeam& team,
                                    const SolverConfig& config) {
  GuidedSchedule sched(t.m, team.size(), config.chunk_min);
  const double* pivot_row = t.row(l);
  team.run([&](unsigned) {
    std::size_t b, e;
    while (sched.claim(b, e)) eliminate_rows_chunk(t, l, k, pivot_row, b, e);
  });
}

FusedObjectiveResult team_fused_objective(DenseTableau& t, std::size_t l,
                                          std::size_t k, WorkerTeam& team,
                                          const SolverConfig& config) {
  GuidedSchedule sched(t.cols(), team.size(), config.chunk_min);
  std::vector<ObjectiveSlot> slots(team.size());
  double* obj = t.row(t.objective_row());
  const double* pivot_row = t.row(l);
  const double factor = obj[k];
  team.run([&](unsigned w) {
    std::size_t b, e;
    while (sched.claim(b, e))
      fused_objective_chunk(obj, pivot_row, k, factor, t.n + t.m,
                            config.eps_cost, b, e, slots[w]);
  });
  const ObjectiveFold fold = fold_objective(slots);
  FusedObjectiveResult out;
  out.negative_count = fold.negatives;
  if (fold.best_col != kNone) out.entering = fold.best_col;
  if (fold.min_negative_col != kNone) out.entering_bland = fold.min_negative_col;
  return out;
}

// --- integrated 6-phase solve loop ----------------------------------------

namespace {

// Shared loop state. Control fields are written only inside single sections
// (worker 0) and consumed after the barrier that follows, which is the one
// synchronization point guarding each of the pivot-publication, pivot-row
// and stop-flag hazards.
struct LoopState {
  DenseTableau& t;
  const SolverConfig& cfg;
  std::size_t cap;

  std::size_t entering = kNone;
  std::size_t leaving = kNone;
  double pivot_value = 0.0;
  double obj_factor = 0.0;
  bool stop = false;
  SolveStatus status = SolveStatus::Optimal;

  std::size_t iterations = 0;
  std::size_t degenerate_run = 0;
  std::vector<PivotRecord> pivot_log;

  GuidedSchedule sched_scan;   // phase II, objective columns [0, n+m)
  GuidedSchedule sched_ratio;  // phase III, rows [0, m)
  GuidedSchedule sched_norm;   // phase IV, columns [0, cols)
  GuidedSchedule sched_elim;   // phase V, rows [0, m)
  GuidedSchedule sched_obj;    // phase VI, columns [0, cols)

  std::vector<RatioSlot> ratio_slots;
  std::vector<ObjectiveSlot> obj_slots;

  LoopState(DenseTableau& tableau, const SolverConfig& config, unsigned workers)
      : t(tableau),
        cfg(config),
        cap(config.iteration_cap(tableau.m, tableau.n)),
        ratio_slots(workers),
        obj_slots(workers) {
    for (GuidedSchedule* s :
         {&sched_scan, &sched_ratio, &sched_norm, &sched_elim, &sched_obj})
      s->configure(workers, config.chunk_min);
    sched_scan.reset(t.n + t.m);
    // no allocations inside the barrier-synchronized loop
    if (config.log_pivots)
      pivot_log.reserve(std::min<std::size_t>(cap, 1u << 20));
  }

  void clear_ratio_phase() {
    sched_ratio.reset(t.m);
    for (RatioSlot& s : ratio_slots) s.clear();
  }

  void clear_pivot_phases() {
    sched_norm.reset(t.cols());
    sched_elim.reset(t.m);
    sched_obj.reset(t.cols());
    for (ObjectiveSlot& s : obj_slots) s.clear();
  }

  // Entering rule for the next iteration; mirrors solve_serial's switch to
  // Bland's rule during a degenerate stall.
  std::size_t choose_entering(const ObjectiveFold& fold) const {
    const bool bland = cfg.bland_stall_window != 0 &&
                       degenerate_run >= cfg.bland_stall_window;
    return bland ? fold.min_negative_col : fold.best_col;
  }
};

// Worker body for the whole solve: phase II once, then the III-IV-V-VI loop.
// Barrier placement (5 per iteration):
//   III reduction barrier; III single + barrier (publishes l, a_lk, the
//   objective factor, and the unbounded verdict); IV barrier (pivot row
//   final); no barrier after V; VI reduction barrier before the stopping
//   test; VI single + barrier (resets control state, publishes entering).
void solve_worker(LoopState& st, WorkerTeam& team, unsigned w) {
  const double eps_cost = st.cfg.eps_cost;
  const double eps_pivot = st.cfg.eps_pivot;
  const std::size_t scan_limit = st.t.n + st.t.m;
  std::size_t b, e;

  // Phase II: initial entering-column scan.
  {
    const double* obj = st.t.row(st.t.objective_row());
    while (st.sched_scan.claim(b, e))
      scan_objective_chunk(obj, b, e, eps_cost, st.obj_slots[w]);
  }
  team.barrier();
  if (w == 0) {
    const ObjectiveFold fold = fold_objective(st.obj_slots);
    if (fold.best_col == kNone) {
      st.stop = true;  // already optimal
    } else if (st.cap == 0) {
      st.stop = true;
      st.status = SolveStatus::IterationLimit;
    } else {
      st.entering = st.choose_entering(fold);
      st.clear_ratio_phase();
    }
  }
  team.barrier();

  while (!st.stop) {
    const std::size_t k = st.entering;

    // Phase III: ratio test and nonpositive count over constraint rows.
    while (st.sched_ratio.claim(b, e))
      ratio_chunk(st.t, k, eps_pivot, b, e, st.ratio_slots[w]);
    team.barrier();
    if (w == 0) {
      const RatioFold fold = fold_ratio(st.ratio_slots);
      if (fold.nonpositive >= st.t.m) {
        st.stop = true;
        st.status = SolveStatus::Unbounded;
      } else {
        const std::size_t l = fold.best_row;
        st.leaving = l;
        // Capture the pivot value and objective factor here, before any
        // worker may touch row l: workers must never re-read them.
        st.pivot_value = st.t.at(l, k);
        st.obj_factor = st.t.at(st.t.objective_row(), k);
        if (st.t.at(l, st.t.rhs_col()) <= eps_pivot)
          ++st.degenerate_run;
        else
          st.degenerate_run = 0;
        if (st.cfg.log_pivots) st.pivot_log.push_back({k, l});
        st.t.basis[l] = k;
        st.clear_pivot_phases();
      }
    }
    team.barrier();
    if (st.stop) break;

    const std::size_t l = st.leaving;
    double* pivot_row = st.t.row(l);

    // Phase IV: normalize the pivot row.
    while (st.sched_norm.claim(b, e))
      normalize_chunk(pivot_row, k, st.pivot_value, b, e);
    team.barrier();

    // Phase V: eliminate the remaining constraint rows. No exit barrier:
    // phase VI touches only the objective row, which phase V never writes.
    while (st.sched_elim.claim(b, e))
      eliminate_rows_chunk(st.t, l, k, pivot_row, b, e);

    // Phase VI: fused objective update + entering selection + negative count.
    {
      double* obj = st.t.row(st.t.objective_row());
      while (st.sched_obj.claim(b, e))
        fused_objective_chunk(obj, pivot_row, k, st.obj_factor, scan_limit,
                              eps_cost, b, e, st.obj_slots[w]);
    }
    team.barrier();
    if (w == 0) {
      const ObjectiveFold fold = fold_objective(st.obj_slots);
      ++st.iterations;
      if (fold.negatives == 0) {
        st.stop = true;  // optimal
      } else if (st.iterations >= st.cap) {
        st.stop = true;
        st.status = SolveStatus::IterationLimit;
      } else {
        st.entering = st.choose_entering(fold);
        st.clear_ratio_phase();
      }
    }
    team.barrier();
  }
}

}  // namespace

SolveOutcome solve_parallel(const LpProblem& problem, const SolverConfig& config) {
  DenseTableau t = build_initial_tableau(problem);
  WorkerTeam team(config.threads, config.pin_threads);
  LoopState st(t, config, team.size());

  const auto t0 = std::chrono::steady_clock::now();
  team.run([&](unsigned w) { solve_worker(st, team, w); });
  const auto t1 = std::chrono::steady_clock::now();

  SolveOutcome out;
  out.status = st.status;
  out.iterations = st.iterations;
  out.pivot_log = std::move(st.pivot_log);
  out.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (st.status == SolveStatus::Optimal) {
    auto [objective, x] = extract_solution(t);
    out.objective = objective;
    out.x = std::move(x);
  } else if (st.status == SolveStatus::IterationLimit) {
    out.objective = t.objective_value();
  }
  return out;
}

}  // namespace parsimplex::parallel
