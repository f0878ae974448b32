#include "typeident/report.hpp"

#include <chrono>
#include <sstream>

#include "typeident/errors.hpp"
#include "typeident/matching.hpp"
#include "typeident/nullspace.hpp"
#include "typeident/recovery.hpp"
#include "typeident/tensorid.hpp"
#include "typeident/typestate.hpp"

using nlohmann::ordered_json;

namespace typeident {

namespace {

struct Labels {
  const std::vector<std::string>* alternatives = nullptr;
  const std::vector<std::string>* types = nullptr;
  const std::vector<std::string>* states = nullptr;
};

ordered_json labeled(const std::vector<std::string>& labels, const std::vector<int>& idx) {
  ordered_json out = ordered_json::array();
  for (int i : idx) out.push_back(labels[static_cast<size_t>(i)]);
  return out;
}

ordered_json assignment_json(const Labels& ctx, const std::vector<int>& assignment) {
  ordered_json out = ordered_json::object();
  for (size_t t = 0; t < assignment.size(); ++t) {
    out[(*ctx.types)[t]] = (*ctx.alternatives)[static_cast<size_t>(assignment[t])];
  }
  return out;
}

std::string assignment_text(const Labels& ctx, const std::vector<int>& assignment) {
  std::string out;
  for (size_t t = 0; t < assignment.size(); ++t) {
    if (t) out += ", ";
    out += (*ctx.types)[t] + "->" + (*ctx.alternatives)[static_cast<size_t>(assignment[t])];
  }
  return out;
}

std::string usage_text(const std::vector<int>& usage) {
  std::string out = "[";
  for (size_t i = 0; i < usage.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(usage[i]);
  }
  return out + "]";
}

ordered_json matching_json(const Labels& ctx, const MatchingWitness& m) {
  ordered_json out;
  out["witness"] = "matching";
  out["assignment"] = assignment_json(ctx, m.assignment);
  out["parity"] = m.parity > 0 ? "even" : "odd";
  return out;
}

ordered_json witness_json(const Labels& ctx, const Witness& witness) {
  ordered_json out;
  if (const auto* m = std::get_if<MatchingWitness>(&witness)) {
    return matching_json(ctx, *m);
  }
  if (const auto* w = std::get_if<RowSubsetWitness>(&witness)) {
    out["witness"] = "row-subset";
    out["rows"] = labeled(*ctx.alternatives, w->rows);
    out["permanent"] = w->permanent;
    out["signed_count"] = w->signed_count;
    if (!w->matching.assignment.empty()) {
      out["matching"] = assignment_json(ctx, w->matching.assignment);
      out["parity"] = w->matching.parity > 0 ? "even" : "odd";
    }
    return out;
  }
  if (const auto* w = std::get_if<OppositeParityPairWitness>(&witness)) {
    out["witness"] = "opposite-parity-pair";
    out["rows"] = labeled(*ctx.alternatives, w->rows);
    out["first"] = matching_json(ctx, w->first);
    out["second"] = matching_json(ctx, w->second);
    return out;
  }
  if (const auto* w = std::get_if<DeficientSetWitness>(&witness)) {
    out["witness"] = "deficient-set";
    out["types"] = labeled(*ctx.types, w->types);
    out["neighborhood"] = labeled(*ctx.alternatives, w->neighborhood);
    return out;
  }
  if (const auto* w = std::get_if<UsageClassWitness>(&witness)) {
    out["witness"] = "usage-class";
    out["rows"] = labeled(*ctx.alternatives, w->rows);
    out["usage"] = w->usage;
    out["net"] = w->net;
    return out;
  }
  if (const auto* w = std::get_if<SharedNullspaceWitness>(&witness)) {
    out["witness"] = "shared-nullspace";
    ordered_json vec = ordered_json::array();
    for (const auto& q : w->vector) vec.push_back(rational_to_string(q));
    out["vector"] = vec;
    return out;
  }
  if (const auto* w = std::get_if<ReassignmentWitness>(&witness)) {
    out["witness"] = "odd-reassignment";
    ordered_json perm = ordered_json::object();
    for (size_t t = 0; t < w->permutation.size(); ++t) {
      perm[(*ctx.types)[t]] = (*ctx.types)[static_cast<size_t>(w->permutation[t])];
    }
    out["permutation"] = perm;
    return out;
  }
  if (const auto* w = std::get_if<PooledPairWitness>(&witness)) {
    out["witness"] = "pooled-pair";
    out["pooling_state"] = (*ctx.states)[static_cast<size_t>(w->state_a)];
    out["checking_state"] = (*ctx.states)[static_cast<size_t>(w->state_b)];
    out["types"] = ordered_json::array({(*ctx.types)[static_cast<size_t>(w->type_1)],
                                        (*ctx.types)[static_cast<size_t>(w->type_2)]});
    out["separated"] = w->separated_by_b;
    out["split_reachable"] = w->split_reachable;
    return out;
  }
  const auto& w = std::get<MatchabilityWitness>(witness);
  out["witness"] = "matchability";
  out["v"] = w.v;
  out["required"] = w.required;
  return out;
}

ordered_json verdict_json(const Labels& ctx, const Verdict& v) {
  ordered_json out;
  out["class"] = ident_class_name(v.klass);
  out["provenance"] = v.provenance;
  if (v.probabilistic) out["probabilistic"] = true;
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : v.witnesses) witnesses.push_back(witness_json(ctx, w));
  out["witnesses"] = witnesses;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

// One human line per verdict, e.g. "GLOBAL (unique matching t1->x, t2->z, t3->y)".
std::string verdict_text(const Labels& ctx, const Verdict& v) {
  std::string head;
  switch (v.klass) {
    case IdentClass::Global: head = "GLOBAL"; break;
    case IdentClass::GenericOnly: head = "GENERIC"; break;
    case IdentClass::Structural: head = "STRUCTURAL"; break;
    case IdentClass::Inconclusive: head = "INCONCLUSIVE"; break;
  }
  std::string detail;
  if (!v.witnesses.empty()) {
    const Witness& w0 = v.witnesses.front();
    if (const auto* w = std::get_if<RowSubsetWitness>(&w0)) {
      if (v.provenance == "unique-matching") {
        detail = "unique matching " + assignment_text(ctx, w->matching.assignment);
      } else if (!w->matching.assignment.empty()) {
        detail = "uniform parity on rows, matching " + assignment_text(ctx, w->matching.assignment);
      } else {
        detail = "permanent " + std::to_string(w->permanent) + ", signed count " +
                 std::to_string(w->signed_count);
      }
    } else if (const auto* m = std::get_if<MatchingWitness>(&w0)) {
      detail = "matching " + assignment_text(ctx, m->assignment) + ", multiple parities";
    } else if (const auto* d = std::get_if<DeficientSetWitness>(&w0)) {
      detail = "deficient set {";
      for (size_t i = 0; i < d->types.size(); ++i) {
        if (i) detail += ",";
        detail += (*ctx.types)[static_cast<size_t>(d->types[i])];
      }
      detail += "} with neighborhood {";
      for (size_t i = 0; i < d->neighborhood.size(); ++i) {
        if (i) detail += ",";
        detail += (*ctx.alternatives)[static_cast<size_t>(d->neighborhood[i])];
      }
      detail += "}";
    } else if (const auto* u = std::get_if<UsageClassWitness>(&w0)) {
      detail = u->net == 0 ? "usage class " + usage_text(u->usage) + " cancels"
                           : "usage class " + usage_text(u->usage) + " has net coefficient " +
                                 std::to_string(u->net);
    } else if (const auto* mb = std::get_if<MatchabilityWitness>(&w0)) {
      detail = "v = (";
      for (size_t i = 0; i < mb->v.size(); ++i) {
        if (i) detail += ",";
        detail += std::to_string(mb->v[i]);
      }
      detail += "), threshold " + std::to_string(mb->required);
    } else if (const auto* p = std::get_if<PooledPairWitness>(&w0)) {
      if (v.klass == IdentClass::Structural) {
        detail = "pair " + (*ctx.types)[static_cast<size_t>(p->type_1)] + "," +
                 (*ctx.types)[static_cast<size_t>(p->type_2)] +
                 (p->separated_by_b ? " split reachable from the remaining columns"
                                    : " pooled in both states");
      } else {
        detail = "pooled pairs separated with unreachable splits";
      }
    } else if (const auto* re = std::get_if<ReassignmentWitness>(&w0)) {
      detail = "odd reassignment ";
      for (size_t t = 0; t < re->permutation.size(); ++t) {
        if (t) detail += ", ";
        detail += (*ctx.types)[t] + "->" + (*ctx.types)[static_cast<size_t>(re->permutation[t])];
      }
    }
  }
  if (detail.empty() && !v.note.empty()) detail = v.note;
  return detail.empty() ? head : head + " (" + detail + ")";
}

Labels labels_of(const ModelFile& mf) {
  Labels ctx;
  if (const auto* p = mf.pattern()) {
    ctx.alternatives = &p->alternatives;
    ctx.types = &p->types;
  } else if (const auto* ts = mf.typestate()) {
    ctx.alternatives = &ts->alternatives;
    ctx.types = &ts->types;
    ctx.states = &ts->states;
  } else if (const auto* multi = mf.multi()) {
    ctx.types = &multi->types;
  }
  return ctx;
}

IdentClass best_class(IdentClass a, IdentClass b) {
  const auto score = [](IdentClass k) {
    switch (k) {
      case IdentClass::Global: return 3;
      case IdentClass::GenericOnly: return 2;
      case IdentClass::Inconclusive: return 1;
      case IdentClass::Structural: return 0;
    }
    return 0;
  };
  return score(a) >= score(b) ? a : b;
}

}  // namespace

ReportBundle analyze_report(const ModelFile& mf, const std::string& display_name,
                            const ReportOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  ReportBundle bundle;
  ordered_json& root = bundle.json;
  root["command"] = "analyze";
  root["model"] = display_name;
  root["kind"] = mf.kind;
  std::ostringstream text;
  text << "model: " << display_name << " (" << mf.kind << ")\n";

  if (const auto* pattern = mf.pattern()) {
    Labels ctx = labels_of(mf);
    const Verdict v = verdict_general(*pattern, opts.verbose);
    root["verdict"] = verdict_json(ctx, v);
    const MaxMatchingResult mm = max_matching(*pattern);
    root["max_matching_size"] = mm.size;
    text << "verdict: " << verdict_text(ctx, v) << "\n";
    text << "maximum matching size: " << mm.size << "\n";
  } else if (const auto* ts = mf.typestate()) {
    Labels ctx = labels_of(mf);
    ordered_json sections;
    Verdict overall;
    bool have_overall = false;

    const auto sep = separating_states(*ts);
    sections["separating_states"] = labeled(ts->states, sep);

    if (opts.sections == "generic" || opts.sections == "all") {
      const Verdict generic = verdict_typestate_generic(*ts, opts.seed);
      sections["generic"] = verdict_json(ctx, generic);
      text << "generic: " << verdict_text(ctx, generic) << "\n";
      overall = generic;
      have_overall = true;
    }
    if (opts.sections == "global" || opts.sections == "all") {
      const Verdict global = verdict_typestate_global(*ts, opts.seed);
      sections["global"] = verdict_json(ctx, global);
      text << "global: " << verdict_text(ctx, global) << "\n";
      if (!have_overall || global.klass == IdentClass::Global) {
        overall = global;
        have_overall = true;
      }
    }
    if (!sep.empty() && opts.sections != "generic") {
      const Verdict re = reassignment_check(*ts, sep.front());
      ordered_json entry;
      entry["state"] = ts->states[static_cast<size_t>(sep.front())];
      entry["verdict"] = verdict_json(ctx, re);
      sections["reassignment"] = entry;
      text << "reassignment via '" << ts->states[static_cast<size_t>(sep.front())]
           << "': " << verdict_text(ctx, re) << "\n";
    }
    if (ts->num_states() == 2) {
      const Verdict ns = verdict_nullspace(*ts, opts.seed);
      ordered_json entry = verdict_json(ctx, ns);
      if (sections.contains("generic")) {
        const bool generic_ident = sections["generic"]["class"] != "structural";
        entry["agrees_with_generic"] = (ns.klass != IdentClass::Structural) == generic_ident;
      }
      sections["nullspace_crosscheck"] = entry;
      text << "nullspace crosscheck: " << verdict_text(ctx, ns) << "\n";
    }
    root["sections"] = sections;
    root["verdict"] = verdict_json(ctx, overall);
    text << "verdict: " << verdict_text(ctx, overall) << "\n";
  } else {
    const auto* multi = mf.multi();
    Labels ctx = labels_of(mf);
    ordered_json sections;
    Verdict overall;
    if (multi->J() == 3) {
      const Verdict matchability = verdict_three_occasion(*multi);
      sections["matchability"] = verdict_json(ctx, matchability);
      text << "matchability: " << verdict_text(ctx, matchability) << "\n";
      overall = matchability;
      const bool all_typestate =
          std::all_of(multi->occasions.begin(), multi->occasions.end(), [](const Occasion& o) {
            return std::holds_alternative<TypeStateModel>(o);
          });
      if (all_typestate) {
        const Verdict per_occasion = verdict_typestate_three_occasion(*multi);
        sections["typestate_occasions"] = verdict_json(ctx, per_occasion);
        text << "type-state occasions: " << verdict_text(ctx, per_occasion) << "\n";
        overall.klass = best_class(overall.klass, per_occasion.klass);
        if (per_occasion.klass == IdentClass::GenericOnly &&
            overall.provenance == "matchability-sum" &&
            overall.klass == IdentClass::GenericOnly) {
          // keep matchability provenance when both certify
        } else if (per_occasion.klass == overall.klass) {
          overall.provenance = per_occasion.provenance;
          overall.witnesses = per_occasion.witnesses;
          overall.note = per_occasion.note;
        }
      }
    } else {
      overall.klass = IdentClass::Inconclusive;
      overall.provenance = "occasion-count";
      overall.note = std::to_string(multi->J()) +
                     " occasion(s): three are required for joint identification";
      ordered_json per_occ = ordered_json::array();
      for (int j = 0; j < multi->J(); ++j) {
        const Occasion& occ = multi->occasions[static_cast<size_t>(j)];
        ordered_json entry;
        entry["occasion"] = j + 1;
        if (const auto* p = std::get_if<PossibilityPattern>(&occ)) {
          Labels octx{&p->alternatives, &p->types, nullptr};
          entry["verdict"] = verdict_json(octx, verdict_general(*p));
        } else {
          const auto& ots = std::get<TypeStateModel>(occ);
          Labels octx{&ots.alternatives, &ots.types, &ots.states};
          entry["verdict"] = verdict_json(octx, verdict_typestate_generic(ots, opts.seed));
        }
        per_occ.push_back(entry);
      }
      sections["per_occasion"] = per_occ;
    }
    root["sections"] = sections;
    root["verdict"] = verdict_json(ctx, overall);
    text << "verdict: " << verdict_text(ctx, overall) << "\n";
  }

  if (opts.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    root["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  bundle.text = text.str();
  return bundle;
}

ReportBundle recover_report(const ModelFile& mf, const ObservedShares& shares,
                            const std::string& display_name, const ReportOptions& opts) {
  const auto matrix = concrete_matrix_of(mf);
  if (!matrix) {
    throw ValidationError("recover needs a model with concrete values or weights");
  }
  const SolutionSet sol = solve_distribution(*matrix, shares);

  ReportBundle bundle;
  ordered_json& root = bundle.json;
  root["command"] = "recover";
  root["model"] = display_name;
  root["unique"] = sol.unique;
  ordered_json pi = ordered_json::object();
  for (int l = 0; l < matrix->r(); ++l) {
    pi[matrix->pattern.types[static_cast<size_t>(l)]] = rational_to_string(sol.particular[static_cast<size_t>(l)]);
  }
  root[sol.unique ? "pi" : "particular"] = pi;
  root["in_simplex"] = sol.particular_in_simplex;
  if (!sol.unique) {
    ordered_json kernel = ordered_json::array();
    for (const auto& direction : sol.kernel.basis) {
      ordered_json vec = ordered_json::array();
      for (const auto& q : direction) vec.push_back(rational_to_string(q));
      kernel.push_back(vec);
    }
    root["kernel"] = kernel;
    ordered_json segments = ordered_json::array();
    for (const auto& [lo, hi] : sol.feasible_segments) {
      segments.push_back(ordered_json::array({rational_to_string(lo), rational_to_string(hi)}));
    }
    root["feasible_segments"] = segments;
  }

  std::ostringstream text;
  text << "model: " << display_name << "\n";
  if (sol.unique) {
    text << "unique distribution:";
    for (int l = 0; l < matrix->r(); ++l) {
      text << " " << matrix->pattern.types[static_cast<size_t>(l)] << "="
           << rational_to_string(sol.particular[static_cast<size_t>(l)]);
    }
    text << (sol.particular_in_simplex ? " (in simplex)\n" : " (outside simplex)\n");
  } else {
    text << "non-unique solution; particular:";
    for (int l = 0; l < matrix->r(); ++l) {
      text << " " << matrix->pattern.types[static_cast<size_t>(l)] << "="
           << rational_to_string(sol.particular[static_cast<size_t>(l)]);
    }
    text << "\nkernel dimension " << sol.kernel.dim() << ":\n";
    for (size_t i = 0; i < sol.kernel.basis.size(); ++i) {
      text << "  direction " << vector_to_string(sol.kernel.basis[i]) << ", feasible c in ["
           << rational_to_string(sol.feasible_segments[i].first) << ", "
           << rational_to_string(sol.feasible_segments[i].second) << "]\n";
    }
  }
  (void)opts;
  bundle.text = text.str();
  return bundle;
}

ReportBundle montecarlo_report(const ModelFile& mf, int samples, std::uint64_t seed,
                               const std::string& display_name, const ReportOptions& opts) {
  Occasion occasion;
  if (const auto* p = mf.pattern()) {
    occasion = *p;
  } else if (const auto* ts = mf.typestate()) {
    occasion = *ts;
  } else {
    throw ValidationError("montecarlo needs a pattern or typestate model");
  }
  const RankReport report = montecarlo_rank(occasion, samples, seed);

  ReportBundle bundle;
  ordered_json& root = bundle.json;
  root["command"] = "montecarlo";
  root["model"] = display_name;
  root["samples"] = report.samples;
  root["seed"] = seed;
  root["full_rank_count"] = report.full_rank_count;
  root["full_rank_fraction"] = report.full_rank_fraction;
  ordered_json sigma;
  sigma["min"] = report.min_singular_min;
  sigma["mean"] = report.min_singular_mean;
  sigma["max"] = report.min_singular_max;
  root["min_singular_value"] = sigma;

  std::ostringstream text;
  text << "model: " << display_name << "\n";
  text << "samples: " << report.samples << " (seed " << seed << ")\n";
  text << "full rank fraction: " << report.full_rank_fraction << " (" << report.full_rank_count
       << "/" << report.samples << ")\n";
  text << "smallest singular value: min " << report.min_singular_min << ", mean "
       << report.min_singular_mean << ", max " << report.min_singular_max << "\n";
  (void)opts;
  bundle.text = text.str();
  return bundle;
}

}  // namespace typeident
