#include "bnpg/solver.hpp"

#include "bnpg/error.hpp"
#include "bnpg/instance_io.hpp"
#include "solver_internal.hpp"

#include <fmt/format.h>

namespace bnpg {

std::string_view to_string(SolverPath path) {
  switch (path) {
    case SolverPath::none: return "none";
    case SolverPath::gadget: return "gadget";
    case SolverPath::exact_set: return "exact-set";
    case SolverPath::greedy: return "greedy";
    case SolverPath::oracle: return "oracle";
  }
  return "none";
}

std::optional<Rational> SolveOutcome::min_cost() const {
  if (const Solution* s = best()) return s->modification_cost;
  return std::nullopt;
}

const Solution* SolveOutcome::best() const {
  if (const auto* f = std::get_if<outcome::Feasible>(&status)) return &f->solution;
  if (const auto* o = std::get_if<outcome::InfeasibleWithinBudget>(&status)) return &o->witness;
  return nullptr;
}

namespace detail {

SolveOutcome settle(const DesignInstance& inst, Solution sol, SolveStats stats, const SolveOptions& opts) {
  if (opts.paranoid) {
    DesignInstance unbounded = inst;
    unbounded.budget = Cost::infinity();
    VerifyReport report = verify_solution(unbounded, sol);
    if (!report.ok) throw std::logic_error("solver produced an invalid solution: " + report.failures.front());
  }
  SolveOutcome out;
  out.stats = std::move(stats);
  if (Cost(sol.modification_cost) <= inst.budget) {
    out.status = outcome::Feasible{std::move(sol)};
  } else {
    Rational c = sol.modification_cost;
    out.status = outcome::InfeasibleWithinBudget{c, std::move(sol)};
  }
  return out;
}

SolveOutcome structurally_infeasible(std::string reason, SolveStats stats) {
  SolveOutcome out;
  out.status = outcome::StructurallyInfeasible{std::move(reason)};
  out.stats = std::move(stats);
  return out;
}

}  // namespace detail

bool polynomial_applicable(const DesignInstance& inst) {
  bool target_ok = std::holds_alternative<target::All>(inst.target) ||
                   std::holds_alternative<target::ExactSet>(inst.target);
  if (!target_ok) return false;
  for (const auto& d : inst.degsets) {
    auto c = d.clamped(inst.size());
    if (!c.empty() && !c.is_interval()) return false;
  }
  return true;
}

SolveOutcome solve(const DesignInstance& inst, SolverKind kind, const SolveOptions& opts) {
  switch (kind) {
    case SolverKind::auto_select:
      if (!polynomial_applicable(inst)) return solve_oracle(inst, opts);
      [[fallthrough]];
    case SolverKind::gadget:
      if (std::holds_alternative<target::All>(inst.target)) return solve_all(inst, opts);
      if (std::holds_alternative<target::ExactSet>(inst.target)) return solve_exact_set(inst, opts);
      throw InvalidInstance("the gadget solver handles only the all and exact-set targets");
    case SolverKind::greedy:
      return solve_unit_convex_fast(inst, opts);
    case SolverKind::oracle:
      return solve_oracle(inst, opts);
  }
  throw std::logic_error("unknown solver kind");
}

std::string write_outcome(const SolveOutcome& out) {
  nlohmann::ordered_json doc;
  if (const auto* f = std::get_if<outcome::Feasible>(&out.status)) {
    doc["status"] = "feasible";
    doc["solver"] = to_string(out.stats.path);
    auto fields = solution_fields(f->solution);
    for (auto& [key, value] : fields.items()) doc[key] = value;
  } else if (const auto* o = std::get_if<outcome::InfeasibleWithinBudget>(&out.status)) {
    doc["status"] = "infeasible_within_budget";
    doc["solver"] = to_string(out.stats.path);
    doc["min_cost"] = format_rational(o->min_cost);
    doc["witness"] = solution_fields(o->witness);
  } else {
    doc["status"] = "structurally_infeasible";
    doc["solver"] = to_string(out.stats.path);
    doc["reason"] = std::get<outcome::StructurallyInfeasible>(out.status).reason;
  }
  return render_document(doc);
}

}  // namespace bnpg
