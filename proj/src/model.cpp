#include "typeident/model.hpp"

#include <set>
#include <sstream>

#include "typeident/errors.hpp"

namespace typeident {

namespace {

void check_unique_labels(const std::vector<std::string>& labels, const char* what,
                         ValidationReport& report) {
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      report.violations.push_back(std::string(what) + " label '" + label + "' repeated");
    }
  }
}

void check_simplex(const RatVector& probs, const char* what, ValidationReport& report) {
  Rational sum(0);
  for (const auto& q : probs) {
    if (q < 0) report.violations.push_back(std::string(what) + " has a negative entry");
    sum += q;
  }
  if (sum != 1) {
    report.violations.push_back(std::string(what) + " entries sum to " +
                                rational_to_string(sum) + ", expected 1");
  }
}

}  // namespace

ValidationReport validate(const PossibilityPattern& p) {
  ValidationReport report;
  if (p.n() < 1) report.violations.push_back("no alternatives");
  if (p.r() < 1) report.violations.push_back("no types");
  check_unique_labels(p.alternatives, "alternative", report);
  check_unique_labels(p.types, "type", report);
  if (static_cast<int>(p.allowed.size()) != p.n()) {
    report.violations.push_back("allowed grid row count != number of alternatives");
    return report;
  }
  for (const auto& row : p.allowed) {
    if (static_cast<int>(row.size()) != p.r()) {
      report.violations.push_back("allowed grid column count != number of types");
      return report;
    }
  }
  for (int l = 0; l < p.r(); ++l) {
    bool any = false;
    for (int k = 0; k < p.n(); ++k) any = any || p.allowed[k][l];
    if (!any) {
      report.violations.push_back("type '" + p.types[l] + "' possible nowhere");
    }
  }
  return report;
}

ValidationReport validate(const ConcreteMatrix& m) {
  ValidationReport report = validate(m.pattern);
  if (static_cast<int>(m.values.size()) != m.n()) {
    report.violations.push_back("value grid row count mismatch");
    return report;
  }
  for (const auto& row : m.values) {
    if (static_cast<int>(row.size()) != m.r()) {
      report.violations.push_back("value grid column count mismatch");
      return report;
    }
  }
  for (int l = 0; l < m.r(); ++l) {
    Rational sum(0);
    for (int k = 0; k < m.n(); ++k) {
      const Rational& v = m.values[k][l];
      if (v < 0 || v > 1) {
        report.violations.push_back("entry (" + m.pattern.alternatives[k] + ", " +
                                    m.pattern.types[l] + ") outside [0,1]");
      }
      if (v > 0 && !m.pattern.allowed[k][l]) {
        report.violations.push_back("positive entry at disallowed position (" +
                                    m.pattern.alternatives[k] + ", " +
                                    m.pattern.types[l] + ")");
      }
      sum += v;
    }
    if (sum != 1) {
      report.violations.push_back("column '" + m.pattern.types[l] + "' sums to " +
                                  rational_to_string(sum) + ", expected 1");
    }
  }
  return report;
}

ValidationReport validate(const TypeStateModel& ts) {
  ValidationReport report;
  if (ts.n() < 1) report.violations.push_back("no alternatives");
  if (ts.r() < 1) report.violations.push_back("no types");
  if (ts.num_states() < 1) report.violations.push_back("no states");
  check_unique_labels(ts.alternatives, "alternative", report);
  check_unique_labels(ts.types, "type", report);
  check_unique_labels(ts.states, "state", report);
  if (static_cast<int>(ts.choice.size()) != ts.r()) {
    report.violations.push_back("choice map not total: row count != number of types");
    return report;
  }
  for (int t = 0; t < ts.r(); ++t) {
    if (static_cast<int>(ts.choice[t].size()) != ts.num_states()) {
      report.violations.push_back("choice map not total for type '" + ts.types[t] + "'");
      continue;
    }
    for (int a = 0; a < ts.num_states(); ++a) {
      const int k = ts.choice[t][a];
      if (k < 0 || k >= ts.n()) {
        report.violations.push_back("choice of type '" + ts.types[t] + "' in state '" +
                                    ts.states[a] + "' is not an alternative");
      }
    }
  }
  if (ts.weights) {
    if (static_cast<int>(ts.weights->size()) != ts.num_states()) {
      report.violations.push_back("weight vector length != number of states");
    } else {
      check_simplex(*ts.weights, "state weights", report);
    }
  }
  return report;
}

ValidationReport validate(const TypeDistribution& pi) {
  ValidationReport report;
  if (pi.probs.empty()) report.violations.push_back("empty type distribution");
  check_simplex(pi.probs, "type distribution", report);
  return report;
}

ValidationReport validate(const ObservedShares& p) {
  ValidationReport report;
  if (p.probs.empty()) report.violations.push_back("empty share vector");
  check_simplex(p.probs, "observed shares", report);
  return report;
}

ValidationReport validate(const MultiOccasionModel& model) {
  ValidationReport report;
  if (model.J() < 1 || model.J() > 3) {
    report.violations.push_back("occasion count must be 1, 2, or 3");
  }
  check_unique_labels(model.types, "type", report);
  for (int j = 0; j < model.J(); ++j) {
    const auto describe = [&](const ValidationReport& sub) {
      for (const auto& v : sub.violations) {
        report.violations.push_back("occasion " + std::to_string(j + 1) + ": " + v);
      }
    };
    const std::vector<std::string>* occ_types = nullptr;
    if (const auto* p = std::get_if<PossibilityPattern>(&model.occasions[j])) {
      describe(validate(*p));
      occ_types = &p->types;
    } else {
      const auto& ts = std::get<TypeStateModel>(model.occasions[j]);
      describe(validate(ts));
      occ_types = &ts.types;
    }
    if (*occ_types != model.types) {
      report.violations.push_back("occasion " + std::to_string(j + 1) +
                                  " disagrees with the shared type list");
    }
  }
  return report;
}

ValidationReport validate(const ChoiceTensor& t) {
  ValidationReport report;
  const size_t expected =
      static_cast<size_t>(t.dims[0]) * static_cast<size_t>(t.dims[1]) * static_cast<size_t>(t.dims[2]);
  if (t.entries.size() != expected) {
    report.violations.push_back("entry count != product of dimensions");
    return report;
  }
  Rational sum(0);
  for (const auto& q : t.entries) {
    if (q < 0) report.violations.push_back("negative tensor entry");
    sum += q;
  }
  if (sum != 1) {
    report.violations.push_back("tensor grand sum is " + rational_to_string(sum) +
                                ", expected 1");
  }
  return report;
}

RatMatrix one_hot_matrix(const TypeStateModel& ts, int state) {
  RatMatrix m(static_cast<size_t>(ts.n()), RatVector(static_cast<size_t>(ts.r()), Rational(0)));
  for (int t = 0; t < ts.r(); ++t) {
    m[static_cast<size_t>(ts.choice[t][state])][static_cast<size_t>(t)] = 1;
  }
  return m;
}

PossibilityPattern induced_pattern(const TypeStateModel& ts) {
  PossibilityPattern p;
  p.alternatives = ts.alternatives;
  p.types = ts.types;
  p.allowed.assign(static_cast<size_t>(ts.n()),
                   std::vector<bool>(static_cast<size_t>(ts.r()), false));
  for (int t = 0; t < ts.r(); ++t) {
    for (int a = 0; a < ts.num_states(); ++a) {
      p.allowed[static_cast<size_t>(ts.choice[t][a])][static_cast<size_t>(t)] = true;
    }
  }
  return p;
}

ConcreteMatrix assemble_matrix(const TypeStateModel& ts, const RatVector& weights) {
  if (static_cast<int>(weights.size()) != ts.num_states()) {
    throw ValidationError("weight vector length != number of states");
  }
  Rational sum(0);
  for (const auto& w : weights) {
    if (w < 0) throw ValidationError("negative state weight");
    sum += w;
  }
  if (sum != 1) throw ValidationError("state weights sum to " + rational_to_string(sum));

  ConcreteMatrix out;
  out.pattern = induced_pattern(ts);
  out.values.assign(static_cast<size_t>(ts.n()),
                    RatVector(static_cast<size_t>(ts.r()), Rational(0)));
  for (int t = 0; t < ts.r(); ++t) {
    for (int a = 0; a < ts.num_states(); ++a) {
      out.values[static_cast<size_t>(ts.choice[t][a])][static_cast<size_t>(t)] += weights[static_cast<size_t>(a)];
    }
  }
  return out;
}

ObservedShares aggregate_shares(const ConcreteMatrix& m, const TypeDistribution& pi) {
  if (static_cast<int>(pi.probs.size()) != m.r()) {
    throw ValidationError("type distribution length != matrix column count");
  }
  ObservedShares p;
  p.probs.assign(static_cast<size_t>(m.n()), Rational(0));
  for (int k = 0; k < m.n(); ++k) {
    for (int l = 0; l < m.r(); ++l) {
      p.probs[static_cast<size_t>(k)] += m.values[static_cast<size_t>(k)][static_cast<size_t>(l)] * pi.probs[static_cast<size_t>(l)];
    }
  }
  return p;
}

ChoiceTensor build_tensor(const std::array<ConcreteMatrix, 3>& occasions,
                          const TypeDistribution& pi) {
  const int r = occasions[0].r();
  for (const auto& m : occasions) {
    if (m.r() != r) throw ValidationError("occasion matrices disagree on type count");
  }
  if (static_cast<int>(pi.probs.size()) != r) {
    throw ValidationError("type distribution length != occasion column count");
  }
  ChoiceTensor t;
  t.dims = {occasions[0].n(), occasions[1].n(), occasions[2].n()};
  t.entries.assign(static_cast<size_t>(t.dims[0]) * t.dims[1] * t.dims[2], Rational(0));
  // Accumulate the r rank-1 terms column by column.
  for (int h = 0; h < r; ++h) {
    for (int k1 = 0; k1 < t.dims[0]; ++k1) {
      const Rational a = pi.probs[static_cast<size_t>(h)] *
                         occasions[0].values[static_cast<size_t>(k1)][static_cast<size_t>(h)];
      if (a == 0) continue;
      for (int k2 = 0; k2 < t.dims[1]; ++k2) {
        const Rational ab = a * occasions[1].values[static_cast<size_t>(k2)][static_cast<size_t>(h)];
        if (ab == 0) continue;
        for (int k3 = 0; k3 < t.dims[2]; ++k3) {
          t.at(k1, k2, k3) += ab * occasions[2].values[static_cast<size_t>(k3)][static_cast<size_t>(h)];
        }
      }
    }
  }
  return t;
}

}  // namespace typeident
