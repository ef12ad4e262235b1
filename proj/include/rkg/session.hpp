#pragma once

#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "rkg/parser.hpp"
#include "rkg/pipeline.hpp"

namespace rkg {

using Value = std::variant<FieldElem, GroupElement, GroupRingElem, NearRingElem,
                           GroupRingMatrix, CellularAutomaton>;

std::string print_value(const Value& v);

struct CommandResult {
  int exit_code = 0;  // 0 success, 1 negative mathematical verdict, 2 error
  std::string text;
  nlohmann::json json;
};

// Holds declared groups, fields and named values, evaluates expressions
// against them, and dispatches the script/CLI commands.  Declarations are
// immutable once bound.
class Session {
 public:
  Session();

  const GroupCtxPtr& default_group() const { return default_group_; }
  const FieldCtxPtr& default_field() const { return default_field_; }
  void set_default_group(GroupCtxPtr g) { default_group_ = std::move(g); }
  void set_default_field(FieldCtxPtr f) { default_field_ = std::move(f); }
  void set_term_budget(uint64_t b) { term_budget_ = b; }
  uint64_t term_budget() const { return term_budget_; }

  void declare_group(const std::string& name, GroupCtxPtr g);
  void declare_field(const std::string& name, FieldCtxPtr f);
  void bind(const std::string& name, Value v);

  Value eval(const Expr& e) const;
  Value eval_text(std::string_view src) const;

  // One declaration or command; never throws (errors land in the result
  // with exit code 2).
  CommandResult execute_line(const std::string& line);
  // Lines with '#' comments; stops at the first hard error, keeps the worst
  // exit code across verdict lines.
  CommandResult execute_script(const std::string& contents);

  // Descriptors: "Z", "Z^2", "C6", "S3", "Q8", "free:2", "free:4:g,h,s,t",
  // or a path to a Cayley-table CSV.
  static GroupCtxPtr parse_group_desc(const std::string& desc);
  // "Q", "GF(4)", "GF(3^2)".
  static FieldCtxPtr parse_field_desc(const std::string& desc);

 private:
  friend struct CommandContext;
  GroupCtxPtr default_group_;
  FieldCtxPtr default_field_;
  uint64_t term_budget_ = kDefaultTermBudget;
  std::map<std::string, GroupCtxPtr> groups_;
  std::map<std::string, FieldCtxPtr> fields_;
  std::map<std::string, Value> values_;
};

// Structural validation of the versioned JSON reports the commands emit.
bool validate_report_json(const nlohmann::json& report, std::string* error);

nlohmann::json pipeline_report_json(const PipelineReport& rep);

}  // namespace rkg
