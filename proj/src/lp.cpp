#include "csg/lp.hpp"

#include <optional>
#include <stdexcept>

namespace csg::lp {

namespace {

class Tableau {
 public:
  Tableau(const Problem& p) : n_(p.num_vars) {
    const std::size_t m = p.constraints.size();
    // column layout: originals, then per row its identity column, then surpluses
    std::size_t cols = n_;
    id_col_.resize(m);
    std::vector<std::optional<std::size_t>> surplus(m);
    flipped_.assign(m, false);
    std::vector<Sense> sense(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Constraint& c = p.constraints[i];
      if (c.coeffs.size() != n_) throw std::invalid_argument("lp: constraint width mismatch");
      sense[i] = c.sense;
      if (sgn(c.rhs) < 0) {
        flipped_[i] = true;
        if (sense[i] == Sense::LessEq)
          sense[i] = Sense::GreaterEq;
        else if (sense[i] == Sense::GreaterEq)
          sense[i] = Sense::LessEq;
      }
      id_col_[i] = cols++;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (sense[i] == Sense::GreaterEq) surplus[i] = cols++;
    width_ = cols;
    artificial_.assign(width_, false);
    rows_.assign(m, std::vector<Rational>(width_ + 1, Rational(0)));
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Constraint& c = p.constraints[i];
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_; ++j) row[j] = flipped_[i] ? Rational(-c.coeffs[j]) : c.coeffs[j];
      row[width_] = flipped_[i] ? Rational(-c.rhs) : c.rhs;
      row[id_col_[i]] = 1;
      if (sense[i] != Sense::LessEq) artificial_[id_col_[i]] = true;
      if (surplus[i]) row[*surplus[i]] = -1;
      basis_[i] = id_col_[i];
    }
    origin_.resize(m);
    for (std::size_t i = 0; i < m; ++i) origin_[i] = i;
  }

  Solution run(const Problem& p) {
    Solution out;
    bool any_artificial = false;
    for (std::size_t b : basis_) any_artificial = any_artificial || artificial_[b];
    if (any_artificial) {
      std::vector<Rational> cost(width_, Rational(0));
      for (std::size_t j = 0; j < width_; ++j)
        if (artificial_[j]) cost[j] = -1;
      load_objective(cost);
      if (!optimise(/*allow_artificial=*/true)) throw std::logic_error("lp: phase one unbounded");
      if (sgn(z_[width_]) != 0) {
        out.status = Status::Infeasible;
        return out;
      }
      drive_out_artificials();
    }
    std::vector<Rational> cost(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = p.objective[j];
    load_objective(cost);
    if (!optimise(/*allow_artificial=*/false)) {
      out.status = Status::Unbounded;
      return out;
    }
    out.status = Status::Optimal;
    out.value = -z_[width_];
    out.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = rows_[i][width_];
    out.duals.assign(p.constraints.size(), Rational(0));
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      Rational y = -z_[id_col_[i]];
      out.duals[i] = flipped_[i] ? Rational(-y) : y;
    }
    return out;
  }

 private:
  void load_objective(const std::vector<Rational>& cost) {
    z_.assign(width_ + 1, Rational(0));
    for (std::size_t j = 0; j < width_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j)
        if (sgn(rows_[i][j]) != 0) z_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = rows_[r];
    if (prow[c] != 1) {
      Rational inv = 1 / prow[c];
      for (auto& e : prow)
        if (sgn(e) != 0) e *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      Rational f = row[c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (sgn(prow[j]) != 0) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) eliminate(rows_[i]);
    eliminate(z_);
    basis_[r] = c;
  }

  // Bland's rule; returns false when unbounded.
  bool optimise(bool allow_artificial) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!allow_artificial && artificial_[j]) continue;
        if (sgn(z_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*enter];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[i][width_] / a;
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (!artificial_[basis_[i]]) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < width_ && !col; ++j)
        if (!artificial_[j] && sgn(rows_[i][j]) != 0) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // redundant row
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t n_;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> id_col_;
  std::vector<std::size_t> origin_;
  std::vector<bool> artificial_;
  std::vector<bool> flipped_;
};

}  // namespace

Solution solve(const Problem& problem) {
  if (problem.objective.size() != problem.num_vars) throw std::invalid_argument("lp: objective width mismatch");
  Tableau t(problem);
  return t.run(problem);
}

}  // namespace csg::lp
