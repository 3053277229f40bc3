#include "archrec/clustering/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "archrec/clustering/outliers.hpp"

namespace archrec {

namespace {

constexpr double kGain = 1e-12;  // smallest objective change that counts as an improvement

double objective_of(const MoveEffect& e, Objective o) { return o == Objective::MQC ? e.mqc() : e.mq; }

double objective_of(const Partition& p, Objective o) {
  return o == Objective::MQC ? p.quality().mqc : p.mq();
}

void audit_move(const Partition& p, const Move& m, const MoveEffect& e, const ClimbOptions& o) {
  if (!o.audit || !o.audit_rng || o.audit_rate <= 0.0) return;
  ++o.audit->evaluations;
  if (o.audit_rng->uniform01() >= o.audit_rate) return;
  ++o.audit->audits;
  std::vector<int> labels = p.assignment();
  labels[m.node] = m.to == kNewCluster ? p.slot_count() : m.to;
  const QualityReport q = quality_of(p.graph(), labels);
  const double identity = 2.0 * q.mq + q.cluster_count - q.diff - q.iso;
  const bool ok = std::abs(q.mq - e.mq) <= 1e-9 && q.cluster_count == e.cluster_count && q.diff == e.diff &&
                  q.iso == e.iso && std::abs(q.mqc - identity) <= 1e-9 && std::abs(e.mqc() - q.mqc) <= 1e-9;
  if (!ok) {
    if (o.audit->failures == 0) {
      std::ostringstream msg;
      msg << "move node " << m.node << " " << m.from << "->" << m.to << ": incremental mq=" << e.mq
          << " |P|=" << e.cluster_count << " diff=" << e.diff << " iso=" << e.iso << ", recomputed mq=" << q.mq
          << " |P|=" << q.cluster_count << " diff=" << q.diff << " iso=" << q.iso;
      o.audit->first_failure = msg.str();
    }
    ++o.audit->failures;
  }
}

struct Candidate {
  Move move;
  MoveEffect effect;
};

}  // namespace

bool sn_accept(double mq_new, double mq_old, const AnnealingState& s, Rng& rng) {
  if (!(mq_new < mq_old)) return false;
  const double theta = rng.uniform01();
  return theta < std::exp((mq_new - mq_old) / s.temp);
}

ClimbOutcome climb_hill(Partition& p, AnnealingState& s, Rng& rng, const ClimbOptions& o) {
  ClimbOutcome out;
  const int n = static_cast<int>(p.node_count());
  if (n <= 1) return out;
  const double start = objective_of(p, o.objective);

  // Phase A: bulk moves towards each node's most similar foreign cluster.
  {
    const auto affinity = p.affinity_matrix(o.exec);
    std::map<std::pair<int, int>, std::vector<int>> proposals;
    for (int u = 0; u < n; ++u) {
      const int own = p.cluster_of(u);
      int target = -1;
      double best = 0.0;
      for (int c = 0; c < p.slot_count(); ++c) {
        if (c == own || !p.is_live(c)) continue;
        if (affinity[u][c] > best) {
          best = affinity[u][c];
          target = c;
        }
      }
      if (target >= 0) proposals[{own, target}].push_back(u);
    }
    std::vector<std::pair<std::pair<int, int>, std::vector<int>>> tally(proposals.begin(), proposals.end());
    std::stable_sort(tally.begin(), tally.end(),
                     [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });

    double current = start;
    for (const auto& [pair, nodes] : tally) {
      for (int u : nodes) {
        const Move m{u, pair.first, pair.second};
        if (!p.valid(m)) continue;
        const MoveEffect e = p.evaluate(m);
        audit_move(p, m, e, o);
        const double value = objective_of(e, o.objective);
        if (value > current + kGain) {
          p.apply(m);
          current = value;
          ++out.moves;
        }
      }
    }
    if (out.moves > 0) {
      out.bulk_moved = true;
      out.improved = true;
      return out;
    }
  }

  // Phase B: steepest ascent over the 1-neighbourhood with annealing.
  const auto slots = p.live_slots();
  std::vector<std::vector<Candidate>> per_node(n);
  auto enumerate = [&](int u) {
    const auto aff = p.affinity(u);
    const int own = p.cluster_of(u);
    auto& list = per_node[u];
    list.clear();
    for (int c : slots) {
      if (c == own) continue;
      const Move m{u, own, c};
      list.push_back({m, p.evaluate(m, aff[own], aff[c])});
    }
    if (p.members(own).size() > 1) {
      const Move m{u, own, kNewCluster};
      list.push_back({m, p.evaluate(m, aff[own], 0.0)});
    }
  };
  if (o.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int u = 0; u < n; ++u) enumerate(u);
  } else {
    for (int u = 0; u < n; ++u) enumerate(u);
  }

  const Candidate* best = nullptr;
  double best_value = start;
  for (const auto& list : per_node) {
    for (const auto& c : list) {
      audit_move(p, c.move, c.effect, o);
      const double value = objective_of(c.effect, o.objective);
      const bool sn = sn_accept(value, start, s, rng);
      if (value > best_value + kGain || sn) {
        best = &c;
        best_value = value;
      }
      if (sn) {
        p.apply(c.move);
        s.temp *= s.cooling;
        s.sn_tag = true;
        out.sn_fired = true;
        out.moves = 1;
        return out;
      }
    }
  }
  if (best) {
    p.apply(best->move);
    out.improved = true;
    out.moves = 1;
  }
  return out;
}

InitiationResult initiation_test(const WeightedGraph& g, const std::vector<std::vector<int>>& seeds) {
  InitiationResult r;
  r.density = g.total_weight();
  r.edge_count = static_cast<double>(g.pair_count());
  double best_mq = -1.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const QualityReport q = quality_of(g, seeds[i]);
    const bool flagged = 2.0 * q.mq - q.diff - q.iso > q.cluster_count;
    r.close_to_optimal.push_back(flagged);
    if (flagged && q.mq > best_mq) {
      best_mq = q.mq;
      r.marked = static_cast<int>(i);
    }
  }
  if (!(r.density > 0.5 * r.edge_count)) r.marked = -1;
  return r;
}

std::string format_trace_line(const TraceLine& t) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d\t%d\t%.10g\t%.10g\t%.10g\t%d", t.seed, t.iteration, t.mq, t.mqc, t.temp,
                t.sn_tag ? 1 : 0);
  return buf;
}

SearchResult search(const SeedContext& ctx, const SearchConfig& cfg) {
  const WeightedGraph& g = *ctx.graph;
  SearchResult result;
  result.audit = {};

  std::vector<std::vector<int>> seeds;
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    Rng rng(Rng::derive(cfg.seed, i));
    if (cfg.strategies[i] == SeedStrategy::CC && cfg.outlier_elimination) {
      OutlierResult outliers = eliminate_outliers(ctx);
      if (outliers.capped) result.warnings.push_back("outlier elimination hit its iteration cap");
      seeds.push_back(std::move(outliers.labels));
    } else {
      seeds.push_back(generate_seed(cfg.strategies[i], ctx, rng));
    }
  }
  if (cfg.initiation_test) {
    result.initiation = initiation_test(g, seeds);
  } else {
    result.initiation.close_to_optimal.assign(seeds.size(), false);
  }

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SeedRun run;
    run.strategy = cfg.strategies[i];
    Partition p(g, seeds[i], cfg.exec);
    run.seed_labels = p.canonical_labels();
    run.seed_quality = p.quality();
    run.close_to_optimal = result.initiation.close_to_optimal[i];
    run.marked = static_cast<int>(i) == result.initiation.marked;
    run.labels = run.seed_labels;
    run.quality = run.seed_quality;

    auto trace = [&](int iteration, const AnnealingState& s) {
      if (!cfg.trace) return;
      const QualityReport q = p.quality();
      result.trace.push_back({static_cast<int>(i), iteration, q.mq, q.mqc, s.temp, s.sn_tag});
    };

    AnnealingState s{cfg.temperature, cfg.cooling, false};
    Rng rng(Rng::derive(cfg.seed ^ 0x5eedULL, i));
    Rng audit_rng(Rng::derive(cfg.seed ^ 0xa0d17ULL, i));
    ClimbOptions options;
    options.objective = cfg.objective;
    options.exec = cfg.exec;
    options.audit_rate = cfg.audit_rate;
    options.audit = &result.audit;
    options.audit_rng = &audit_rng;

    trace(0, s);
    if (run.marked) {
      result.runs.push_back(std::move(run));
      continue;
    }
    double mq_new = run.seed_quality.mqc;
    if (mq_new - run.seed_quality.cluster_count < cfg.epsilon_stop) {
      run.early_return = true;
      result.runs.push_back(std::move(run));
      continue;
    }

    double mq_old = -static_cast<double>(g.size());
    double best = run.quality.mqc;
    auto current = [&] { return cfg.objective == Objective::MQC ? p.quality().mqc : p.mq(); };
    mq_new = current();
    while ((mq_new > mq_old + kGain || s.sn_tag) && run.iterations < cfg.max_iterations) {
      mq_old = mq_new;
      s.sn_tag = false;
      p.refresh(cfg.exec);
      const ClimbOutcome step = climb_hill(p, s, rng, options);
      if (step.sn_fired) ++run.sn_acceptances;
      mq_new = current();
      ++run.iterations;
      trace(run.iterations, s);
      const QualityReport q = p.quality();
      if (q.mqc > best + kGain) {
        best = q.mqc;
        run.labels = p.canonical_labels();
        run.quality = q;
      }
    }
    result.runs.push_back(std::move(run));
  }

  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    if (result.best_run < 0 || result.runs[i].quality.mqc > result.runs[result.best_run].quality.mqc + kGain)
      result.best_run = static_cast<int>(i);
  }
  if (result.best_run >= 0) {
    result.labels = result.runs[result.best_run].labels;
  } else {
    result.labels.assign(g.size(), 0);
  }
  result.quality = quality_of(g, result.labels);
  return result;
}

}  // namespace archrec
