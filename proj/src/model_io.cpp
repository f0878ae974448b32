#include "typeident/model_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "typeident/errors.hpp"

using nlohmann::json;

namespace typeident {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

std::pair<int, int> line_column(const std::string& text, size_t byte) {
  int line = 1, column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of labels");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) fail(std::string(what) + " must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

int label_index(const std::vector<std::string>& labels, const std::string& label,
                const char* what) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) fail("unknown " + std::string(what) + " label '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

RatVector rational_list(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  RatVector out;
  for (const auto& item : j) out.push_back(rational_from_json(item));
  return out;
}

PossibilityPattern parse_pattern(const json& j) {
  PossibilityPattern p;
  p.alternatives = string_list(j.at("alternatives"), "alternatives");
  p.types = string_list(j.at("types"), "types");
  const auto& grid = j.at("allowed");
  if (!grid.is_array()) fail("allowed must be a row-major 0/1 grid");
  for (const auto& row : grid) {
    std::vector<bool> bits;
    for (const auto& cell : row) {
      if (!cell.is_number_integer()) fail("allowed grid entries must be 0 or 1");
      const long v = cell.get<long>();
      if (v != 0 && v != 1) fail("allowed grid entries must be 0 or 1");
      bits.push_back(v == 1);
    }
    p.allowed.push_back(std::move(bits));
  }
  return p;
}

TypeStateModel parse_typestate(const json& j) {
  TypeStateModel ts;
  ts.alternatives = string_list(j.at("alternatives"), "alternatives");
  ts.types = string_list(j.at("types"), "types");
  ts.states = string_list(j.at("states"), "states");
  const auto& choice = j.at("choice");
  if (!choice.is_object()) fail("choice must map type -> state -> alternative");
  ts.choice.assign(ts.types.size(), std::vector<int>(ts.states.size(), -1));
  for (const auto& [type_label, per_state] : choice.items()) {
    const int t = label_index(ts.types, type_label, "type");
    if (!per_state.is_object()) fail("choice of '" + type_label + "' must be an object");
    for (const auto& [state_label, alt] : per_state.items()) {
      const int a = label_index(ts.states, state_label, "state");
      if (!alt.is_string()) fail("chosen alternative must be a label");
      ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)] =
          label_index(ts.alternatives, alt.get<std::string>(), "alternative");
    }
  }
  for (size_t t = 0; t < ts.choice.size(); ++t) {
    for (size_t a = 0; a < ts.choice[t].size(); ++a) {
      if (ts.choice[t][a] < 0) {
        fail("choice map not total: type '" + ts.types[t] + "', state '" + ts.states[a] + "'");
      }
    }
  }
  if (j.contains("weights")) {
    const auto& weights = j.at("weights");
    if (!weights.is_object()) fail("weights must map state -> rational");
    RatVector w(ts.states.size(), Rational(0));
    for (const auto& [state_label, value] : weights.items()) {
      const int a = label_index(ts.states, state_label, "state");
      w[static_cast<size_t>(a)] = rational_from_json(value);
    }
    ts.weights = std::move(w);
  }
  return ts;
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) fail("floating-point literals are not accepted; use \"num/den\"");
  fail("expected a rational as \"num/den\" string or integer");
}

ModelFile parse_model_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    fail("malformed JSON at line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": " + e.what());
  }

  try {
    ModelFile mf;
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
      fail("model file must be an object with a \"kind\" field");
    }
    mf.kind = j.at("kind").get<std::string>();
    if (mf.kind == "pattern") {
      mf.model = parse_pattern(j);
      if (j.contains("values")) {
        const auto& grid = j.at("values");
        RatMatrix values;
        for (const auto& row : grid) values.push_back(rational_list(row, "values row"));
        mf.values = std::move(values);
      }
    } else if (mf.kind == "typestate") {
      mf.model = parse_typestate(j);
    } else if (mf.kind == "multi") {
      MultiOccasionModel model;
      model.types = string_list(j.at("types"), "types");
      if (!j.contains("occasions") || !j.at("occasions").is_array()) {
        fail("multi model needs an occasions array");
      }
      for (const auto& occ : j.at("occasions")) {
        json local = occ;
        if (!local.contains("types")) local["types"] = j.at("types");
        if (!local.contains("kind") || !local.at("kind").is_string()) {
          fail("each occasion needs its own kind");
        }
        const std::string kind = local.at("kind").get<std::string>();
        if (kind == "pattern") {
          model.occasions.emplace_back(parse_pattern(local));
        } else if (kind == "typestate") {
          model.occasions.emplace_back(parse_typestate(local));
        } else {
          fail("occasion kind must be \"pattern\" or \"typestate\"");
        }
      }
      mf.model = std::move(model);
    } else {
      fail("kind must be \"pattern\", \"typestate\", or \"multi\"");
    }
    if (j.contains("pi")) mf.pi = rational_list(j.at("pi"), "pi");
    return mf;
  } catch (const json::exception& e) {
    fail(std::string("model file structure: ") + e.what());
  }
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model_json(buffer.str());
}

ValidationReport validate_model_file(const ModelFile& mf) {
  ValidationReport report;
  if (const auto* p = mf.pattern()) {
    report = validate(*p);
    if (mf.values) {
      ConcreteMatrix m{*p, *mf.values};
      const ValidationReport mr = validate(m);
      report.violations.insert(report.violations.end(), mr.violations.begin(),
                               mr.violations.end());
    }
  } else if (const auto* ts = mf.typestate()) {
    report = validate(*ts);
  } else if (const auto* multi = mf.multi()) {
    report = validate(*multi);
  }
  if (mf.pi) {
    const ValidationReport pr = validate(TypeDistribution{*mf.pi});
    for (const auto& v : pr.violations) report.violations.push_back("pi: " + v);
  }
  return report;
}

std::optional<ConcreteMatrix> concrete_matrix_of(const ModelFile& mf) {
  if (const auto* p = mf.pattern()) {
    if (!mf.values) return std::nullopt;
    return ConcreteMatrix{*p, *mf.values};
  }
  if (const auto* ts = mf.typestate()) {
    if (!ts->weights) return std::nullopt;
    return assemble_matrix(*ts, *ts->weights);
  }
  return std::nullopt;
}

ObservedShares load_shares_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(buffer.str(), e.byte > 0 ? e.byte - 1 : 0);
    fail("malformed JSON at line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": " + e.what());
  }
  const json& array = j.is_object() && j.contains("shares") ? j.at("shares") : j;
  return ObservedShares{rational_list(array, "shares")};
}

}  // namespace typeident
