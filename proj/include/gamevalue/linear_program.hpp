#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gamevalue/errors.hpp"
#include "gamevalue/rational.hpp"

namespace gamevalue {

enum class Relation { LessEq, Equal, GreaterEq };
enum class VarDomain { NonNegative, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// maximize objective . x  subject to the constraint rows and per-variable
/// domain flags.  Every coefficient row must have length variable_count.
struct LinearProgram {
  std::size_t variable_count = 0;
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
  std::vector<VarDomain> domains;  // empty means all NonNegative

  VarDomain domain(std::size_t j) const {
    return domains.empty() ? VarDomain::NonNegative : domains.at(j);
  }
  void validate() const {
    if (objective.size() != variable_count)
      throw DimensionError("objective length " + std::to_string(objective.size()) +
                           " != variable count " + std::to_string(variable_count));
    if (!domains.empty() && domains.size() != variable_count)
      throw DimensionError("domain flags length mismatch");
    for (std::size_t r = 0; r < constraints.size(); ++r)
      if (constraints[r].coeffs.size() != variable_count)
        throw DimensionError("constraint " + std::to_string(r) + " has " +
                             std::to_string(constraints[r].coeffs.size()) +
                             " coefficients, expected " + std::to_string(variable_count));
  }
};

/// Outcome of an exact solve.  When Optimal, primal_values satisfy every
/// constraint exactly and dual_values (one per constraint, in the caller's
/// row order and orientation) certify optimality:
///   sum_i y_i a_ij >= c_j for NonNegative x_j, with equality for Free x_j,
///   y_i >= 0 on <= rows, y_i <= 0 on >= rows, y_i free on = rows,
///   sum_i y_i b_i = objective_value.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal_values;
  Rational objective_value;
  std::vector<Rational> dual_values;
};

/// True iff point satisfies all constraints and domain flags exactly.
inline bool check_point(const LinearProgram& lp, const std::vector<Rational>& point) {
  lp.validate();
  if (point.size() != lp.variable_count)
    throw DimensionError("point length " + std::to_string(point.size()) +
                         " != variable count " + std::to_string(lp.variable_count));
  for (std::size_t j = 0; j < lp.variable_count; ++j)
    if (lp.domain(j) == VarDomain::NonNegative && point[j] < 0) return false;
  for (const auto& row : lp.constraints) {
    Rational lhs;
    for (std::size_t j = 0; j < lp.variable_count; ++j) lhs += row.coeffs[j] * point[j];
    switch (row.relation) {
      case Relation::LessEq:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

/// Verifies the full optimality certificate of an Optimal outcome:
/// primal feasibility, dual feasibility (signs + column inequalities) and
/// the exact strong-duality equality.
inline bool check_duality(const LinearProgram& lp, const LpOutcome& out) {
  if (out.status != LpStatus::Optimal) return false;
  if (out.dual_values.size() != lp.constraints.size()) return false;
  if (!check_point(lp, out.primal_values)) return false;
  Rational primal;
  for (std::size_t j = 0; j < lp.variable_count; ++j)
    primal += lp.objective[j] * out.primal_values[j];
  if (primal != out.objective_value) return false;

  Rational dual_obj;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Rational& y = out.dual_values[i];
    switch (lp.constraints[i].relation) {
      case Relation::LessEq:
        if (y < 0) return false;
        break;
      case Relation::GreaterEq:
        if (y > 0) return false;
        break;
      case Relation::Equal:
        break;
    }
    dual_obj += y * lp.constraints[i].rhs;
  }
  if (dual_obj != out.objective_value) return false;
  for (std::size_t j = 0; j < lp.variable_count; ++j) {
    Rational col;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
      col += out.dual_values[i] * lp.constraints[i].coeffs[j];
    if (lp.domain(j) == VarDomain::Free ? col != lp.objective[j] : col < lp.objective[j])
      return false;
  }
  return true;
}

namespace detail {

// Dense two-phase tableau simplex over exact rationals, Bland's pivoting rule
// for the entering and leaving choices, so termination is guaranteed under
// degeneracy.  Column layout: structural columns first (free variables split
// into a positive and a negative part), then one slack or surplus column per
// row, then artificial columns.  Artificial columns are kept in the tableau
// with zero phase-2 cost and barred from entering; their reduced costs at
// optimality read off the duals.
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    lp.validate();
    build();
  }

  LpOutcome solve() {
    LpOutcome out;
    // Phase 1: maximize -sum(artificials).
    if (!artificials_.empty()) {
      std::vector<Rational> phase1(cols_);
      for (std::size_t a : artificials_) phase1[a] = Rational(-1);
      run(phase1, /*allow_artificial=*/true);
      Rational infeas;
      for (std::size_t r = 0; r < rows_; ++r)
        if (is_artificial_[basis_[r]]) infeas += rhs_[r];
      if (infeas != 0) {
        out.status = LpStatus::Infeasible;
        return out;
      }
    }
    // Phase 2: the caller's objective on structural columns.
    std::vector<Rational> cost(cols_);
    for (std::size_t j = 0; j < lp_.variable_count; ++j) {
      cost[pos_col_[j]] += lp_.objective[j];
      if (neg_col_[j] != npos) cost[neg_col_[j]] -= lp_.objective[j];
    }
    if (!run(cost, /*allow_artificial=*/false)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.primal_values.assign(lp_.variable_count, Rational(0));
    std::vector<Rational> col_value(cols_);
    for (std::size_t r = 0; r < rows_; ++r) col_value[basis_[r]] = rhs_[r];
    for (std::size_t j = 0; j < lp_.variable_count; ++j) {
      out.primal_values[j] = col_value[pos_col_[j]];
      if (neg_col_[j] != npos) out.primal_values[j] -= col_value[neg_col_[j]];
    }
    for (std::size_t j = 0; j < lp_.variable_count; ++j)
      out.objective_value += lp_.objective[j] * out.primal_values[j];
    // Duals: the unit column of row i is its slack (<=) or artificial (>=, =)
    // column, with reduced cost -y_i; rows negated during rhs normalization
    // flip the sign back to the caller's orientation.
    out.dual_values.assign(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      std::size_t col = unit_col_[i];
      Rational y = reduced_cost(cost, col) * Rational(-1);
      out.dual_values[i] = row_negated_[i] ? -y : y;
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void build() {
    rows_ = lp_.constraints.size();
    pos_col_.assign(lp_.variable_count, 0);
    neg_col_.assign(lp_.variable_count, npos);
    std::size_t c = 0;
    for (std::size_t j = 0; j < lp_.variable_count; ++j) {
      pos_col_[j] = c++;
      if (lp_.domain(j) == VarDomain::Free) neg_col_[j] = c++;
    }
    std::size_t structural = c;
    row_negated_.assign(rows_, false);
    std::vector<Relation> rel(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      rel[i] = lp_.constraints[i].relation;
      if (lp_.constraints[i].rhs < 0) {
        row_negated_[i] = true;
        if (rel[i] == Relation::LessEq)
          rel[i] = Relation::GreaterEq;
        else if (rel[i] == Relation::GreaterEq)
          rel[i] = Relation::LessEq;
      }
    }
    std::vector<std::size_t> slack_col(rows_, npos), art_col(rows_, npos);
    for (std::size_t i = 0; i < rows_; ++i)
      if (rel[i] != Relation::Equal) slack_col[i] = c++;
    for (std::size_t i = 0; i < rows_; ++i)
      if (rel[i] != Relation::LessEq) art_col[i] = c++;
    cols_ = c;

    tab_.assign(rows_, std::vector<Rational>(cols_));
    rhs_.assign(rows_, Rational(0));
    basis_.assign(rows_, 0);
    is_artificial_.assign(cols_, false);
    unit_col_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& row = lp_.constraints[i];
      Rational sign = row_negated_[i] ? Rational(-1) : Rational(1);
      for (std::size_t j = 0; j < lp_.variable_count; ++j) {
        Rational a = sign * row.coeffs[j];
        tab_[i][pos_col_[j]] += a;
        if (neg_col_[j] != npos) tab_[i][neg_col_[j]] -= a;
      }
      rhs_[i] = sign * row.rhs;
      if (slack_col[i] != npos)
        tab_[i][slack_col[i]] = rel[i] == Relation::LessEq ? Rational(1) : Rational(-1);
      if (art_col[i] != npos) {
        tab_[i][art_col[i]] = Rational(1);
        is_artificial_[art_col[i]] = true;
        artificials_.push_back(art_col[i]);
      }
      basis_[i] = art_col[i] != npos ? art_col[i] : slack_col[i];
      unit_col_[i] = art_col[i] != npos ? art_col[i] : slack_col[i];
    }
  }

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational z;
    for (std::size_t r = 0; r < rows_; ++r)
      if (!tab_[r][j].is_zero() && !cost[basis_[r]].is_zero()) z += cost[basis_[r]] * tab_[r][j];
    return cost[j] - z;
  }

  // Returns false on unbounded.
  bool run(const std::vector<Rational>& cost, bool allow_artificial) {
    std::vector<char> in_basis(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) in_basis[basis_[r]] = 1;
    // Bland terminates finitely; the cap only turns an implementation bug
    // into a loud failure instead of a hang.
    std::size_t cap = 4 * (rows_ + 1) * (cols_ + 1) * (cols_ + 1) + 1024;
    for (std::size_t it = 0; it < cap; ++it) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_basis[j]) continue;
        if (!allow_artificial && is_artificial_[j]) continue;
        if (reduced_cost(cost, j) > 0) {
          enter = j;
          break;  // Bland: lowest-index improving column
        }
      }
      if (enter == npos) return true;
      std::size_t leave = npos;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / tab_[r][enter];
        if (leave == npos || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == npos) return false;
      in_basis[basis_[leave]] = 0;
      in_basis[enter] = 1;
      pivot(leave, enter);
    }
    throw std::logic_error("simplex iteration cap exceeded");
  }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational pv = tab_[pr][pc];
    for (auto& x : tab_[pr]) x /= pv;
    rhs_[pr] /= pv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || tab_[r][pc].is_zero()) continue;
      Rational f = tab_[r][pc];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!tab_[pr][j].is_zero()) tab_[r][j] -= f * tab_[pr][j];
      rhs_[r] -= f * rhs_[pr];
    }
    basis_[pr] = pc;
  }

  const LinearProgram& lp_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> pos_col_, neg_col_, unit_col_;
  std::vector<char> is_artificial_;
  std::vector<std::size_t> artificials_;
  std::vector<char> row_negated_;
};

}  // namespace detail

/// Exact two-phase simplex.  Pure: identical input yields an identical
/// outcome bit for bit.
inline LpOutcome solve(const LinearProgram& lp) { return detail::SimplexTableau(lp).solve(); }

}  // namespace gamevalue
