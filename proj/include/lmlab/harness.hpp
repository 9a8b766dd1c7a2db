#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lmlab/cochain.hpp"
#include "lmlab/homology.hpp"
#include "lmlab/process.hpp"
#include "lmlab/simplex.hpp"

namespace lmlab {

// Every randomized entry point defaults to this seed; there is no
// entropy-seeded mode anywhere.
inline constexpr std::uint64_t default_master_seed = 271828;

enum class campaign_kind { hitting, rank_structure, torsion_scan, noadjacent };

inline const char* kind_name(campaign_kind k) {
  switch (k) {
    case campaign_kind::hitting: return "hitting";
    case campaign_kind::rank_structure: return "rank";
    case campaign_kind::torsion_scan: return "torsion";
    case campaign_kind::noadjacent: return "noadjacent";
  }
  return "?";
}

struct experiment_config {
  campaign_kind kind = campaign_kind::hitting;
  int d = 2;
  std::vector<int> ns = {8};
  int trials = 100;
  std::uint64_t seed = default_master_seed;
  cocycle_caps caps;
  int stride = 1;
  double c = 0.0;  // noadjacent: p = c log n / n; 0 picks the default c = d
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials >= 1 required");
    if (d < 1) throw std::invalid_argument("config: d >= 1 required");
    if (ns.empty()) throw std::invalid_argument("config: at least one n required");
    for (int n : ns)
      if (n <= d) throw std::invalid_argument("config: every n must exceed d");
    if (stride < 1) throw std::invalid_argument("config: stride >= 1 required");
  }

  int worker_count() const {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
};

struct torsion_event {
  index_t m = 0;
  std::vector<bigint> factors;
};

// One trial's record; which fields are meaningful depends on the campaign.
struct trial_record {
  int n = 0, d = 0;
  std::uint64_t seed = 0;
  index_t t_iso = -1, t_hom = -1;
  bool coincide = false;
  index_t rank_before = -1;
  std::vector<bigint> torsion_before;
  index_t isolated_before = -1;
  // rank-structure campaign
  index_t probe_m = -1;
  index_t isolated = -1;
  index_t free_rank = -1;
  std::vector<bigint> torsion;
  bool rank_equal = false;
  bool conditions_pass = false;
  bool cond1_evaluated = false;
  // torsion scan
  std::vector<torsion_event> events;
  // noadjacent
  bool violation = false;
};

struct campaign_summary {
  int n = 0;
  int trials = 0;
  double coincide_frac = 0.0;
  double mean_gap = 0.0;
  index_t max_gap = 0;
  double rank_eq_frac = 0.0;
  index_t torsion_events = 0;
  double stderr_coincide = 0.0;
};

struct campaign_result {
  experiment_config config;
  std::vector<trial_record> records;      // trial-index order, all n blocks
  std::vector<campaign_summary> summaries;  // one per n
};

namespace detail {

// Embarrassingly parallel trial map with deterministic per-slot results.
// The first worker exception aborts the campaign.
template <class Fn>
void parallel_trials(int trials, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t trial_seed(std::uint64_t master, int n, int trial) {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(n)),
                     static_cast<std::uint64_t>(trial));
}

inline campaign_summary summarize(int n, const std::vector<trial_record>& block) {
  campaign_summary s;
  s.n = n;
  s.trials = static_cast<int>(block.size());
  index_t coincided = 0, rank_eq = 0;
  double gap_sum = 0.0;
  for (const auto& r : block) {
    if (r.coincide) ++coincided;
    if (r.rank_equal) ++rank_eq;
    if (r.t_iso >= 0 && r.t_hom >= 0) {
      gap_sum += static_cast<double>(r.t_hom - r.t_iso);
      s.max_gap = std::max(s.max_gap, r.t_hom - r.t_iso);
    }
    s.torsion_events += static_cast<index_t>(r.events.size());
    if (!r.torsion.empty() || !r.torsion_before.empty()) ++s.torsion_events;
    if (r.violation) ++s.torsion_events;
  }
  if (s.trials > 0) {
    s.coincide_frac = static_cast<double>(coincided) / s.trials;
    s.rank_eq_frac = static_cast<double>(rank_eq) / s.trials;
    s.mean_gap = gap_sum / s.trials;
    s.stderr_coincide =
        std::sqrt(s.coincide_frac * (1.0 - s.coincide_frac) / static_cast<double>(s.trials));
  }
  return s;
}

}  // namespace detail

// Hitting-time campaign: per trial, the two hitting times, their gap, and the
// homology summary one step before coverage. t_iso <= t_hom is asserted on
// every trial; a violation aborts the run.
inline campaign_result run_hitting(const experiment_config& cfg) {
  cfg.validate();
  campaign_result out;
  out.config = cfg;
  for (int n : cfg.ns) {
    std::vector<trial_record> block(static_cast<std::size_t>(cfg.trials));
    detail::parallel_trials(cfg.trials, cfg.worker_count(), [&](int t) {
      trial_record rec;
      rec.n = n;
      rec.d = cfg.d;
      rec.seed = detail::trial_seed(cfg.seed, n, t);
      process_state state(n, cfg.d, rec.seed);
      rec.t_iso = hitting_time_isolated(state);
      complex before = state.snapshot(rec.t_iso - 1);
      auto h_before = homology(before);
      rec.rank_before = h_before.free_rank;
      rec.torsion_before = h_before.torsion;
      rec.isolated_before = static_cast<index_t>(isolated_facets(before).size());
      rec.rank_equal = h_before.torsion.empty() && h_before.free_rank == rec.isolated_before;
      if (h_before.is_zero())
        throw std::logic_error("hitting campaign: homology vanished before t_iso (n=" +
                               std::to_string(n) + " seed=" + std::to_string(rec.seed) + ")");
      rec.t_hom = hitting_time_homology(state, rec.t_iso);
      if (rec.t_iso > rec.t_hom)
        throw std::logic_error("hitting campaign: t_iso > t_hom (n=" + std::to_string(n) +
                               " seed=" + std::to_string(rec.seed) + ")");
      rec.coincide = rec.t_iso == rec.t_hom;
      block[static_cast<std::size_t>(t)] = std::move(rec);
    });
    out.summaries.push_back(detail::summarize(n, block));
    for (auto& r : block) out.records.push_back(std::move(r));
  }
  return out;
}

// Probe point from the theorem's proof: m = round(((d - 1/4) log n / n) C(n, d+1)).
inline index_t rank_probe_m(int n, int d) {
  const double frac = (static_cast<double>(d) - 0.25) * std::log(static_cast<double>(n)) /
                      static_cast<double>(n);
  const double m = frac * static_cast<double>(binom(n, d + 1));
  index_t probe = static_cast<index_t>(std::llround(m));
  return std::clamp<index_t>(probe, 0, binom(n, d + 1));
}

// Rank-structure campaign: homology at the probe point versus the isolated
// facet count. Whenever the condition checks pass within caps, rank equality
// and torsion-freeness must hold; any counterexample aborts the run.
inline campaign_result run_rank_structure(const experiment_config& cfg) {
  cfg.validate();
  campaign_result out;
  out.config = cfg;
  for (int n : cfg.ns) {
    std::vector<trial_record> block(static_cast<std::size_t>(cfg.trials));
    detail::parallel_trials(cfg.trials, cfg.worker_count(), [&](int t) {
      trial_record rec;
      rec.n = n;
      rec.d = cfg.d;
      rec.seed = detail::trial_seed(cfg.seed, n, t);
      rec.probe_m = rank_probe_m(n, cfg.d);
      process_state state(n, cfg.d, rec.seed);
      complex y = state.snapshot(rec.probe_m);
      auto h = homology(y);
      rec.free_rank = h.free_rank;
      rec.torsion = h.torsion;
      rec.isolated = static_cast<index_t>(isolated_facets(y).size());
      rec.rank_equal = h.torsion.empty() && h.free_rank == rec.isolated;
      auto rep = check_conditions(y, cfg.caps);
      rec.conditions_pass = rep.passes();
      rec.cond1_evaluated = rep.cond1 != condition_report::verdict::not_evaluated;
      if (rec.conditions_pass && !rec.rank_equal)
        throw std::logic_error(
            "rank campaign: conditions passed but rank/torsion structure failed (n=" +
            std::to_string(n) + " seed=" + std::to_string(rec.seed) + ")");
      block[static_cast<std::size_t>(t)] = std::move(rec);
    });
    out.summaries.push_back(detail::summarize(n, block));
    for (auto& r : block) out.records.push_back(std::move(r));
  }
  return out;
}

// Torsion scan: sweep the process at the configured stride and log every m
// whose homology carries torsion, with the invariant factors.
inline campaign_result run_torsion_scan(const experiment_config& cfg) {
  cfg.validate();
  campaign_result out;
  out.config = cfg;
  for (int n : cfg.ns) {
    std::vector<trial_record> block(static_cast<std::size_t>(cfg.trials));
    detail::parallel_trials(cfg.trials, cfg.worker_count(), [&](int t) {
      trial_record rec;
      rec.n = n;
      rec.d = cfg.d;
      rec.seed = detail::trial_seed(cfg.seed, n, t);
      process_state state(n, cfg.d, rec.seed);
      const index_t total = state.total_faces();
      for (index_t m = 0; m <= total; m += cfg.stride) {
        auto h = homology(state.snapshot(m));
        if (!h.torsion.empty()) rec.events.push_back({m, h.torsion});
        if (m + cfg.stride > total && m != total) {
          auto hl = homology(state.snapshot(total));
          if (!hl.torsion.empty()) rec.events.push_back({total, hl.torsion});
        }
      }
      block[static_cast<std::size_t>(t)] = std::move(rec);
    });
    out.summaries.push_back(detail::summarize(n, block));
    for (auto& r : block) out.records.push_back(std::move(r));
  }
  return out;
}

// Isolated-pair campaign: sample the static model at p = c log n / n and
// count complexes containing two isolated facets meeting at a ridge.
inline campaign_result run_noadjacent(const experiment_config& cfg) {
  cfg.validate();
  if (cfg.d < 2)
    throw std::invalid_argument("noadjacent campaign requires d >= 2 (ridges must exist)");
  campaign_result out;
  out.config = cfg;
  const double c = cfg.c > 0.0 ? cfg.c : static_cast<double>(cfg.d);
  for (int n : cfg.ns) {
    const double p = std::min(1.0, c * std::log(static_cast<double>(n)) / static_cast<double>(n));
    std::vector<trial_record> block(static_cast<std::size_t>(cfg.trials));
    detail::parallel_trials(cfg.trials, cfg.worker_count(), [&](int t) {
      trial_record rec;
      rec.n = n;
      rec.d = cfg.d;
      rec.seed = detail::trial_seed(cfg.seed, n, t);
      complex y = sample_static(n, cfg.d, p, rec.seed);
      rec.violation = !isolated_pairs_sharing_ridge(y).empty();
      rec.coincide = !rec.violation;  // summary column reuse: fraction clean
      block[static_cast<std::size_t>(t)] = std::move(rec);
    });
    out.summaries.push_back(detail::summarize(n, block));
    for (auto& r : block) out.records.push_back(std::move(r));
  }
  return out;
}

inline campaign_result run_campaign(const experiment_config& cfg) {
  switch (cfg.kind) {
    case campaign_kind::hitting: return run_hitting(cfg);
    case campaign_kind::rank_structure: return run_rank_structure(cfg);
    case campaign_kind::torsion_scan: return run_torsion_scan(cfg);
    case campaign_kind::noadjacent: return run_noadjacent(cfg);
  }
  throw std::invalid_argument("run_campaign: unknown kind");
}

}  // namespace lmlab
