#include "gnevi/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gnevi::lp {

namespace {

constexpr double kOptTol = 1e-9;
constexpr double kPivTol = 1e-11;

// Full-tableau two-phase simplex on
//   min c·y,  A y <= b,  y >= 0,
// with Bland's smallest-index rule in both phases. Phase 1 uses the single
// artificial column trick: minimize t with A y - t <= b, pivoting t in at the
// most negative right-hand side.
class Tableau {
public:
    Tableau(const std::vector<Vec>& A, const Vec& b, const Vec& c)
        : m_(A.size()), n_(c.size()), cols_(n_ + m_ + 2) {
        rows_.assign(m_ + 1, Vec(cols_, 0.0));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = A[i][j];
            rows_[i][n_ + i] = 1.0;       // slack
            rows_[i][art_col()] = -1.0;   // artificial
            rows_[i][rhs_col()] = b[i];
            basis_[i] = n_ + i;
        }
        c_ = c;
    }

    Status run(Vec& y_out, double& value_out) {
        std::size_t worst = 0;
        bool need_phase1 = false;
        for (std::size_t i = 0; i < m_; ++i) {
            if (rows_[i][rhs_col()] < rows_[worst][rhs_col()]) worst = i;
            if (rows_[i][rhs_col()] < -kOptTol) need_phase1 = true;
        }
        if (need_phase1) {
            set_objective_for(art_col());
            pivot(worst, art_col());
            if (!iterate(true)) return Status::unbounded;  // cannot happen in phase 1
            if (-rows_[m_][rhs_col()] > kOptTol) return Status::infeasible;
            drive_out_artificial();
        }
        set_structural_objective();
        if (!iterate(false)) return Status::unbounded;
        y_out.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) y_out[basis_[i]] = rows_[i][rhs_col()];
        value_out = dot(c_, y_out);
        return Status::optimal;
    }

private:
    std::size_t art_col() const { return n_ + m_; }
    std::size_t rhs_col() const { return n_ + m_ + 1; }

    void set_objective_for(std::size_t col) {
        std::fill(rows_[m_].begin(), rows_[m_].end(), 0.0);
        rows_[m_][col] = 1.0;
        reduce_objective();
    }

    void set_structural_objective() {
        std::fill(rows_[m_].begin(), rows_[m_].end(), 0.0);
        for (std::size_t j = 0; j < n_; ++j) rows_[m_][j] = c_[j];
        reduce_objective();
    }

    void reduce_objective() {
        for (std::size_t i = 0; i < m_; ++i) {
            double f = rows_[m_][basis_[i]];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) rows_[m_][j] -= f * rows_[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        double p = rows_[r][col];
        for (std::size_t j = 0; j < cols_; ++j) rows_[r][j] /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            double f = rows_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[r][j];
        }
        basis_[r] = col;
    }

    // Bland: entering column = smallest index with negative reduced cost;
    // leaving row = min ratio, ties by smallest basic variable index.
    bool iterate(bool allow_artificial) {
        const std::size_t lim = allow_artificial ? art_col() + 1 : art_col();
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < lim; ++j) {
                if (is_basic(j)) continue;
                if (rows_[m_][j] < -kOptTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter] <= kPivTol) continue;
                double ratio = rows_[i][rhs_col()] / rows_[i][enter];
                if (ratio < best - kPivTol ||
                    (ratio < best + kPivTol && (leave == m_ || basis_[i] < basis_[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void drive_out_artificial() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] != art_col()) continue;
            for (std::size_t j = 0; j < art_col(); ++j) {
                if (std::fabs(rows_[i][j]) > kPivTol && !is_basic(j)) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    bool is_basic(std::size_t col) const {
        return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
    }

    std::size_t m_, n_, cols_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> basis_;
    Vec c_;
};

Result solve_raw(const Vec& c, const std::vector<Constraint>& rows, const Box& box) {
    const std::size_t n = c.size();
    // Shift x = lo + y so y >= 0; upper bounds become ordinary rows.
    std::vector<Vec> A;
    Vec b;
    for (const auto& r : rows) {
        A.push_back(r.a);
        b.push_back(r.b - dot(r.a, box.lo));
    }
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        A.push_back(e);
        b.push_back(box.hi[j] - box.lo[j]);
    }
    Tableau t(A, b, c);
    Vec y;
    double value = 0;
    Status st = t.run(y, value);
    Result res;
    res.status = st;
    if (st != Status::optimal) return res;
    res.argmin = add(box.lo, y);
    res.value = dot(c, res.argmin);
    return res;
}

}  // namespace

Result solve(const Vec& c, const std::vector<Constraint>& rows, const Box& box) {
    Result base = solve_raw(c, rows, box);
    if (!base.ok()) return base;
    const std::size_t n = c.size();
    const double slack = 1e-10 * std::max(1.0, std::fabs(base.value));
    std::vector<Constraint> pinned = rows;
    pinned.push_back({c, base.value + slack});
    Result cur = base;
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        Result rj = solve_raw(e, pinned, box);
        if (!rj.ok()) break;  // numerically pinned away; keep previous point
        pinned.push_back({e, rj.value + 1e-10});
        cur = rj;
    }
    base.argmin = cur.argmin;
    base.value = dot(c, base.argmin);
    return base;
}

Result maximize(const Vec& c, const std::vector<Constraint>& rows, const Box& box) {
    Vec neg = scale(c, -1.0);
    Result r = solve(neg, rows, box);
    r.value = -r.value;
    return r;
}

Result feasible_point(const std::vector<Constraint>& rows, const Box& box) {
    Vec zero(box.lo.size(), 0.0);
    return solve(zero, rows, box);
}

void append_equality(std::vector<Constraint>& rows, const Vec& a, double b) {
    rows.push_back({a, b});
    rows.push_back({scale(a, -1.0), -b});
}

}  // namespace gnevi::lp
