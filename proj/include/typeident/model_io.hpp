#pragma once

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "typeident/model.hpp"

namespace typeident {

// A parsed model file: exactly one of the three top-level kinds, plus the
// optional concrete payload ("values", "weights" live inside the model,
// "pi" alongside).
struct ModelFile {
  std::string kind;  // "pattern" | "typestate" | "multi"
  std::variant<PossibilityPattern, TypeStateModel, MultiOccasionModel> model;
  std::optional<RatMatrix> values;  // pattern kind only
  std::optional<RatVector> pi;

  const PossibilityPattern* pattern() const { return std::get_if<PossibilityPattern>(&model); }
  const TypeStateModel* typestate() const { return std::get_if<TypeStateModel>(&model); }
  const MultiOccasionModel* multi() const { return std::get_if<MultiOccasionModel>(&model); }
};

// Throws ValidationError with line/column diagnostics on malformed JSON,
// and on grids/labels that do not form a model.
ModelFile load_model_file(const std::string& path);
ModelFile parse_model_json(const std::string& text);

// Validation of the parsed payload (pattern/typestate/multi plus optional
// values and pi).
ValidationReport validate_model_file(const ModelFile& mf);

// The concrete matrix carried by the file: explicit values for a pattern,
// or the assembly from weights for a type-state model. Nullopt when absent.
std::optional<ConcreteMatrix> concrete_matrix_of(const ModelFile& mf);

// Shares file: either a bare JSON array of rationals or {"shares": [...]}.
ObservedShares load_shares_file(const std::string& path);

// Rationals serialize as "num/den" strings; plain integers are accepted on
// input as shorthand. Floating-point JSON numbers are rejected.
Rational rational_from_json(const nlohmann::json& j);

}  // namespace typeident
