#include "patrelax/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

namespace patrelax::lp {

LinearProgram::LinearProgram(std::size_t num_vars, Sense sense)
    : num_vars_(num_vars),
      sense_(sense),
      objective_(num_vars, 0.0),
      lower_(num_vars, 0.0),
      upper_(num_vars, kInf) {}

void LinearProgram::set_objective(std::span<const double> c) {
  if (c.size() != num_vars_) throw std::invalid_argument("objective length mismatch");
  objective_.assign(c.begin(), c.end());
}

void LinearProgram::set_bounds(std::size_t j, double lower, double upper) {
  if (j >= num_vars_) throw std::out_of_range("variable index out of range");
  if (std::isnan(lower) || std::isnan(upper) || lower > upper || lower == kInf ||
      upper == -kInf) {
    throw std::invalid_argument("invalid variable bounds");
  }
  lower_[j] = lower;
  upper_[j] = upper;
}

void LinearProgram::add_row(std::span<const double> coeffs, Relation rel, double rhs) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("row length mismatch");
  if (!std::isfinite(rhs)) throw std::invalid_argument("row right-hand side must be finite");
  coeffs_.insert(coeffs_.end(), coeffs.begin(), coeffs.end());
  relations_.push_back(rel);
  rhs_.push_back(rhs);
}

namespace {

enum class VarState { kBasic, kAtLower, kAtUpper, kFreeZero };

constexpr std::size_t kDegenerateRunBeforeBland = 50;
constexpr std::size_t kReinvertInterval = 100;
constexpr std::size_t kMaxRepairs = 20;

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, std::span<const std::size_t> rows, const LpOptions& opt)
      : lp_(lp), rows_(rows.begin(), rows.end()), opt_(opt), m_(rows.size()), n_(lp.num_vars()) {
    build();
  }

  LpOutcome solve() {
    LpOutcome out;
    if (num_art_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t k = 0; k < num_art_; ++k) phase1[n_ + m_ + k] = 1.0;
      if (!optimize(phase1)) {
        throw LpError("phase I reported unbounded", m_, cols_, iterations_);
      }
      double infeas = 0.0;
      for (std::size_t k = 0; k < num_art_; ++k) infeas += x_[n_ + m_ + k];
      if (infeas > opt_.feasibility_tol * (1.0 + rhs_scale_)) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      for (std::size_t k = 0; k < num_art_; ++k) {
        const std::size_t j = n_ + m_ + k;
        upper_[j] = 0.0;
        if (state_[j] != VarState::kBasic) {
          state_[j] = VarState::kAtLower;
          x_[j] = 0.0;
        }
      }
    }
    std::vector<double> cost(cols_, 0.0);
    const double sign = lp_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n_; ++j) cost[j] = sign * lp_.objective()[j];
    if (!optimize(cost)) {
      out.status = LpStatus::kUnbounded;
      out.iterations = iterations_;
      return out;
    }
    out.status = LpStatus::kOptimal;
    std::vector<double> d;
    reduced_costs(cost, d);
    out.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) out.duals[i] = sign * -d[n_ + i];
    out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = 0; j < n_; ++j) {
      out.x[j] = std::clamp(out.x[j], lp_.lower(j), lp_.upper(j));
    }
    out.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) out.objective += lp_.objective()[j] * out.x[j];
    out.iterations = iterations_;
    check_residuals(out.x);
    return out;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  double orig(std::size_t i, std::size_t j) const {
    if (j < n_) return lp_.row(rows_[i])[j];
    if (j < n_ + m_) return j - n_ == i ? 1.0 : 0.0;
    const std::size_t k = j - n_ - m_;
    return art_row_[k] == i ? art_sign_[k] : 0.0;
  }

  double& t(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
  double t(std::size_t i, std::size_t j) const { return tab_[i * cols_ + j]; }

  void build() {
    lower_.assign(n_ + m_, 0.0);
    upper_.assign(n_ + m_, 0.0);
    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::kAtLower);
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = lp_.lower(j);
      upper_[j] = lp_.upper(j);
      if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
        state_[j] = VarState::kAtLower;
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
        state_[j] = VarState::kAtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = VarState::kFreeZero;
      }
    }
    // Slack s_i with a_i'x + s_i = b_i.
    std::vector<double> residual(m_);
    rhs_scale_ = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto a = lp_.row(rows_[i]);
      double ax = 0.0;
      for (std::size_t j = 0; j < n_; ++j) ax += a[j] * x_[j];
      residual[i] = lp_.rhs(rows_[i]) - ax;
      rhs_scale_ = std::max(rhs_scale_, std::abs(lp_.rhs(rows_[i])));
      const std::size_t s = n_ + i;
      switch (lp_.relation(rows_[i])) {
        case Relation::kLessEqual: lower_[s] = 0.0; upper_[s] = kInf; break;
        case Relation::kGreaterEqual: lower_[s] = -kInf; upper_[s] = 0.0; break;
        case Relation::kEqual: lower_[s] = 0.0; upper_[s] = 0.0; break;
      }
    }
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t s = n_ + i;
      const double r = residual[i];
      if (r >= lower_[s] && r <= upper_[s]) {
        basis_[i] = s;
        state_[s] = VarState::kBasic;
        x_[s] = r;
      } else {
        x_[s] = 0.0;
        state_[s] = lower_[s] == 0.0 ? VarState::kAtLower : VarState::kAtUpper;
        art_row_.push_back(i);
        art_sign_.push_back(r > 0.0 ? 1.0 : -1.0);
      }
    }
    num_art_ = art_row_.size();
    cols_ = n_ + m_ + num_art_;
    for (std::size_t k = 0; k < num_art_; ++k) {
      const std::size_t j = n_ + m_ + k;
      lower_.push_back(0.0);
      upper_.push_back(kInf);
      x_.push_back(std::abs(residual[art_row_[k]]));
      state_.push_back(VarState::kBasic);
      basis_[art_row_[k]] = j;
    }
    tab_.assign(m_ * cols_, 0.0);
    std::vector<double> row_sign(m_, 1.0);
    for (std::size_t k = 0; k < num_art_; ++k) row_sign[art_row_[k]] = art_sign_[k];
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(i, j) = row_sign[i] * orig(i, j);
    }
  }

  void reduced_costs(const std::vector<double>& cost, std::vector<double>& d) const {
    d = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * t(i, j);
    }
    for (std::size_t i = 0; i < m_; ++i) d[basis_[i]] = 0.0;
  }

  // Returns false when the objective is unbounded below.
  bool optimize(const std::vector<double>& cost) {
    std::vector<double> d;
    reduced_costs(cost, d);

    bool bland = false;
    std::size_t degenerate_run = 0;
    std::size_t since_reinvert = 0;
    int confirmations = 0;
    std::size_t repairs = 0;
    std::vector<double> column(m_);
    while (true) {
      if (iterations_ >= opt_.max_iterations) {
        throw LpError("simplex iteration limit reached", m_, cols_, iterations_);
      }
      if (since_reinvert >= kReinvertInterval) {
        reinvert();
        refresh_basic_values();
        reduced_costs(cost, d);
        since_reinvert = 0;
      }
      // Pricing.
      std::size_t enter = cols_;
      double dir = 0.0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const VarState st = state_[j];
        if (st == VarState::kBasic || lower_[j] == upper_[j]) continue;
        double jdir = 0.0;
        if (d[j] < -opt_.optimality_tol &&
            (st == VarState::kAtLower || st == VarState::kFreeZero)) {
          jdir = 1.0;
        } else if (d[j] > opt_.optimality_tol &&
                   (st == VarState::kAtUpper || st == VarState::kFreeZero)) {
          jdir = -1.0;
        }
        if (jdir == 0.0) continue;
        if (bland) {
          enter = j;
          dir = jdir;
          break;
        }
        if (std::abs(d[j]) > best) {
          best = std::abs(d[j]);
          enter = j;
          dir = jdir;
        }
      }
      if (enter == cols_) {
        // Confirm optimality on a freshly inverted basis.
        if (since_reinvert != 0 && confirmations < 2) {
          ++confirmations;
          since_reinvert = kReinvertInterval;
          continue;
        }
        // Drift can leave the basics off their bounds while the reduced
        // costs stay optimal; dual simplex steps restore feasibility.
        if (worst_basic_violation().first > 0.0) {
          if (++repairs > kMaxRepairs) {
            throw LpError("could not restore primal feasibility", m_, cols_, iterations_);
          }
          dual_repair(d);
          confirmations = 0;
          since_reinvert = kReinvertInterval;
          continue;
        }
        break;
      }
      ++iterations_;
      ++since_reinvert;

      // Harris ratio test: bound the step with relaxed limits, then pick the
      // largest pivot among rows whose exact limit fits under that bound.
      for (std::size_t i = 0; i < m_; ++i) column[i] = t(i, enter);
      double relaxed = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double rate = -dir * column[i];
        const std::size_t b = basis_[i];
        // Clamped at zero: a drifted basic may already sit past its bound.
        if (rate < -opt_.pivot_tol && std::isfinite(lower_[b])) {
          relaxed = std::min(relaxed, std::max(0.0, (x_[b] - lower_[b] + opt_.feasibility_tol) / -rate));
        } else if (rate > opt_.pivot_tol && std::isfinite(upper_[b])) {
          relaxed = std::min(relaxed, std::max(0.0, (upper_[b] - x_[b] + opt_.feasibility_tol) / rate));
        }
      }
      const double own = upper_[enter] - lower_[enter];
      const bool flip = std::isfinite(own) && own <= relaxed;
      double theta = own;
      std::size_t leave_row = m_;
      if (!flip) {
        if (!std::isfinite(relaxed)) return false;
        double best_alpha = 0.0;
        double best_limit = kInf;
        for (std::size_t i = 0; i < m_; ++i) {
          const double rate = -dir * column[i];
          const std::size_t b = basis_[i];
          double limit;
          if (rate < -opt_.pivot_tol && std::isfinite(lower_[b])) {
            limit = (x_[b] - lower_[b]) / -rate;
          } else if (rate > opt_.pivot_tol && std::isfinite(upper_[b])) {
            limit = (upper_[b] - x_[b]) / rate;
          } else {
            continue;
          }
          limit = std::max(limit, 0.0);
          if (limit > relaxed) continue;
          bool take;
          if (leave_row == m_) {
            take = true;
          } else if (bland) {
            take = limit < best_limit || (limit == best_limit && basis_[i] < basis_[leave_row]);
          } else {
            take = std::abs(column[i]) > best_alpha;
          }
          if (take) {
            leave_row = i;
            best_alpha = std::abs(column[i]);
            best_limit = limit;
          }
        }
        if (leave_row == m_) throw LpError("ratio test found no pivot row", m_, cols_, iterations_);
        theta = best_limit;
      }

      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
      if (degenerate_run > kDegenerateRunBeforeBland) bland = true;

      x_[enter] += dir * theta;
      for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= dir * theta * column[i];

      if (flip) {
        if (dir > 0) {
          x_[enter] = upper_[enter];
          state_[enter] = VarState::kAtUpper;
        } else {
          x_[enter] = lower_[enter];
          state_[enter] = VarState::kAtLower;
        }
        continue;
      }

      const std::size_t leave = basis_[leave_row];
      if (-dir * column[leave_row] < 0.0) {
        x_[leave] = lower_[leave];
        state_[leave] = VarState::kAtLower;
      } else {
        x_[leave] = upper_[leave];
        state_[leave] = VarState::kAtUpper;
      }
      basis_[leave_row] = enter;
      state_[enter] = VarState::kBasic;
      pivot(leave_row, enter, d);
    }
    refresh_basic_values();
    return true;
  }

  // Largest scaled bound violation among basic variables and its row.
  std::pair<double, std::size_t> worst_basic_violation() const {
    std::pair<double, std::size_t> worst{0.0, m_};
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t b = basis_[i];
      double v = 0.0;
      if (x_[b] < lower_[b]) v = (lower_[b] - x_[b]) / (1.0 + std::abs(lower_[b]));
      if (x_[b] > upper_[b]) v = (x_[b] - upper_[b]) / (1.0 + std::abs(upper_[b]));
      if (v > opt_.feasibility_tol && v > worst.first) worst = {v, i};
    }
    return worst;
  }

  // Dual simplex pivots until every basic variable is within its bounds.
  void dual_repair(std::vector<double>& d) {
    for (std::size_t guard = 0; guard < 4 * (m_ + cols_); ++guard) {
      const auto [viol, r] = worst_basic_violation();
      if (r == m_) return;
      if (iterations_ >= opt_.max_iterations) {
        throw LpError("simplex iteration limit reached", m_, cols_, iterations_);
      }
      const std::size_t leave = basis_[r];
      const bool to_lower = x_[leave] < lower_[leave];
      const double target = to_lower ? lower_[leave] : upper_[leave];
      const double need = target - x_[leave];
      std::size_t enter = cols_;
      double best_ratio = kInf;
      double best_alpha = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const VarState st = state_[j];
        if (st == VarState::kBasic || lower_[j] == upper_[j]) continue;
        const double alpha = t(r, j);
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        // x_leave moves by -alpha * dx_j; dx_j must point into the bounds.
        const double dx_sign = need * -alpha > 0.0 ? 1.0 : -1.0;
        if (dx_sign > 0.0 && st == VarState::kAtUpper) continue;
        if (dx_sign < 0.0 && st == VarState::kAtLower) continue;
        const double ratio = std::abs(d[j]) / std::abs(alpha);
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && std::abs(alpha) > best_alpha)) {
          best_ratio = ratio;
          best_alpha = std::abs(alpha);
          enter = j;
        }
      }
      if (enter == cols_) {
        throw LpError("basis drifted off a bound with no repair pivot", m_, cols_, iterations_);
      }
      ++iterations_;
      const double dx = need / -t(r, enter);
      x_[enter] += dx;
      for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= t(i, enter) * dx;
      x_[leave] = target;
      state_[leave] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
      basis_[r] = enter;
      state_[enter] = VarState::kBasic;
      pivot(r, enter, d);
    }
    throw LpError("dual repair did not finish", m_, cols_, iterations_);
  }

  // Rebuilds the tableau as B^{-1} M from the original columns. Keeps the
  // current tableau if B is numerically singular.
  void reinvert() {
    std::vector<double> b(m_ * m_), inv(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = 0; i < m_; ++i) b[r * m_ + i] = orig(r, basis_[i]);
      inv[r * m_ + r] = 1.0;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m_; ++r) {
        if (std::abs(b[r * m_ + c]) > std::abs(b[p * m_ + c])) p = r;
      }
      if (std::abs(b[p * m_ + c]) < 1e-13) return;
      if (p != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(b[p * m_ + k], b[c * m_ + k]);
          std::swap(inv[p * m_ + k], inv[c * m_ + k]);
        }
      }
      const double piv = 1.0 / b[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        b[c * m_ + k] *= piv;
        inv[c * m_ + k] *= piv;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = b[r * m_ + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          b[r * m_ + k] -= f * b[c * m_ + k];
          inv[r * m_ + k] -= f * inv[c * m_ + k];
        }
      }
    }
    std::fill(tab_.begin(), tab_.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const auto a = lp_.row(rows_[r]);
      for (std::size_t i = 0; i < m_; ++i) {
        const double f = inv[i * m_ + r];
        if (f == 0.0) continue;
        double* row = &tab_[i * cols_];
        for (std::size_t j = 0; j < n_; ++j) row[j] += f * a[j];
        row[n_ + r] += f;
      }
    }
    for (std::size_t k = 0; k < num_art_; ++k) {
      const std::size_t r = art_row_[k];
      for (std::size_t i = 0; i < m_; ++i) t(i, n_ + m_ + k) = inv[i * m_ + r] * art_sign_[k];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t q = 0; q < m_; ++q) t(i, basis_[q]) = i == q ? 1.0 : 0.0;
    }
  }

  void pivot(std::size_t r, std::size_t j, std::vector<double>& d) {
    double* prow = &tab_[r * cols_];
    const double inv = 1.0 / prow[j];
    for (std::size_t k = 0; k < cols_; ++k) prow[k] *= inv;
    prow[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * cols_];
      const double f = row[j];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < cols_; ++k) row[k] -= f * prow[k];
      row[j] = 0.0;
    }
    const double f = d[j];
    if (f != 0.0) {
      for (std::size_t k = 0; k < cols_; ++k) d[k] -= f * prow[k];
      d[j] = 0.0;
    }
  }

  // x_B = B^{-1}(b - N x_N); the slack block of the tableau holds B^{-1}.
  void refresh_basic_values() {
    std::vector<double> rhs(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double r = lp_.rhs(rows_[i]);
      const auto a = lp_.row(rows_[i]);
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] != VarState::kBasic) r -= a[j] * x_[j];
      }
      if (state_[n_ + i] != VarState::kBasic) r -= x_[n_ + i];
      rhs[i] = r;
    }
    for (std::size_t k = 0; k < num_art_; ++k) {
      const std::size_t j = n_ + m_ + k;
      if (state_[j] != VarState::kBasic) rhs[art_row_[k]] -= art_sign_[k] * x_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += t(i, n_ + k) * rhs[k];
      x_[basis_[i]] = v;
    }
  }

  void check_residuals(const std::vector<double>& x) const {
    for (std::size_t i = 0; i < m_; ++i) {
      const auto a = lp_.row(rows_[i]);
      double ax = 0.0;
      double scale = 1.0 + std::abs(lp_.rhs(rows_[i]));
      for (std::size_t j = 0; j < n_; ++j) {
        ax += a[j] * x[j];
        scale += std::abs(a[j] * x[j]);
      }
      const double b = lp_.rhs(rows_[i]);
      double viol = 0.0;
      switch (lp_.relation(rows_[i])) {
        case Relation::kLessEqual: viol = ax - b; break;
        case Relation::kGreaterEqual: viol = b - ax; break;
        case Relation::kEqual: viol = std::abs(ax - b); break;
      }
      if (viol > 1e-6 * scale) {
        throw LpError("optimal basis violates row " + std::to_string(rows_[i]) + " by " +
                          std::to_string(viol),
                      m_, cols_, iterations_);
      }
    }
  }

  const LinearProgram& lp_;
  std::vector<std::size_t> rows_;
  const LpOptions& opt_;
  std::size_t m_;
  std::size_t n_;
  std::size_t num_art_ = 0;
  std::size_t cols_ = 0;
  double rhs_scale_ = 0.0;
  std::vector<double> tab_;
  std::vector<double> lower_, upper_, x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> art_row_;
  std::vector<double> art_sign_;
  std::size_t iterations_ = 0;
};

double row_violation(const LinearProgram& lp, std::size_t i, const std::vector<double>& x) {
  const auto a = lp.row(i);
  double ax = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) ax += a[j] * x[j];
  const double b = lp.rhs(i);
  double viol = 0.0;
  switch (lp.relation(i)) {
    case Relation::kLessEqual: viol = ax - b; break;
    case Relation::kGreaterEqual: viol = b - ax; break;
    case Relation::kEqual: viol = std::abs(ax - b); break;
  }
  return viol / (1.0 + std::abs(b));
}

LpOutcome solve_with_row_generation(const LinearProgram& lp, const LpOptions& opt) {
  const std::size_t m = lp.num_rows();
  const std::size_t batch = std::max<std::size_t>(16, lp.num_vars());
  std::vector<char> in_working(m, 0);
  std::vector<std::size_t> working;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.relation(i) == Relation::kEqual) {
      in_working[i] = 1;
      working.push_back(i);
    }
  }
  std::size_t total_iterations = 0;
  while (true) {
    std::sort(working.begin(), working.end());
    DenseSimplex simplex(lp, working, opt);
    LpOutcome out = simplex.solve();
    total_iterations += out.iterations;
    out.iterations = total_iterations;
    if (out.status != LpStatus::kOptimal) return out;
    std::vector<double> duals(m, 0.0);
    for (std::size_t k = 0; k < working.size(); ++k) duals[working[k]] = out.duals[k];
    out.duals = std::move(duals);
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t i = 0; i < m; ++i) {
      if (in_working[i]) continue;
      const double v = row_violation(lp, i, out.x);
      if (v > opt.feasibility_tol) violated.emplace_back(v, i);
    }
    if (violated.empty()) return out;
    const std::size_t take = std::min(batch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take),
                      violated.end(), [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    for (std::size_t k = 0; k < take; ++k) {
      in_working[violated[k].second] = 1;
      working.push_back(violated[k].second);
    }
  }
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp, const LpOptions& options) {
  bool bounded = true;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (!std::isfinite(lp.lower(j)) || !std::isfinite(lp.upper(j))) bounded = false;
  }
  const std::size_t tall = std::max<std::size_t>(50, 4 * lp.num_vars());
  if (options.row_generation && bounded && lp.num_rows() > tall) {
    try {
      return solve_with_row_generation(lp, options);
    } catch (const LpError&) {
      // Fall through to the full program, which sees every row from the start.
    }
  }
  std::vector<std::size_t> rows(lp.num_rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  DenseSimplex simplex(lp, rows, options);
  return simplex.solve();
}

std::string to_lp_format(const LinearProgram& lp) {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto term = [&](double c, std::size_t j, bool first) {
    std::string s = c < 0 ? " - " : (first ? " " : " + ");
    s += num(std::abs(c)) + " x" + std::to_string(j);
    return s;
  };
  std::string out = lp.sense() == Sense::kMinimize ? "Minimize\n obj:" : "Maximize\n obj:";
  bool first = true;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective()[j] == 0.0) continue;
    out += term(lp.objective()[j], j, first);
    first = false;
  }
  if (first) out += " 0 x0";
  out += "\nSubject To\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    out += " c" + std::to_string(i) + ":";
    bool rfirst = true;
    const auto a = lp.row(i);
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      if (a[j] == 0.0) continue;
      out += term(a[j], j, rfirst);
      rfirst = false;
    }
    if (rfirst) out += " 0 x0";
    switch (lp.relation(i)) {
      case Relation::kLessEqual: out += " <= "; break;
      case Relation::kGreaterEqual: out += " >= "; break;
      case Relation::kEqual: out += " = "; break;
    }
    out += num(lp.rhs(i)) + "\n";
  }
  out += "Bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const double l = lp.lower(j);
    const double u = lp.upper(j);
    const std::string x = "x" + std::to_string(j);
    if (!std::isfinite(l) && !std::isfinite(u)) {
      out += " " + x + " free\n";
    } else if (!std::isfinite(u)) {
      out += " " + x + " >= " + num(l) + "\n";
    } else if (!std::isfinite(l)) {
      out += " -inf <= " + x + " <= " + num(u) + "\n";
    } else {
      out += " " + num(l) + " <= " + x + " <= " + num(u) + "\n";
    }
  }
  out += "End\n";
  return out;
}

}  // namespace patrelax::lp
