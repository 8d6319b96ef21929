#include "clmp/citest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

namespace clmp {

namespace {

constexpr double kCorrClamp = 1e-12;

double two_sided_normal_p(double statistic) {
    return std::erfc(std::abs(statistic) / std::sqrt(2.0));
}

Eigen::MatrixXd correlation_matrix(const Dataset& d, const std::vector<std::string>& cols) {
    const std::size_t n = d.row_count();
    const int k = static_cast<int>(cols.size());
    Eigen::MatrixXd data(n, k);
    for (int j = 0; j < k; ++j) {
        const auto& col = d.continuous(cols[j]);
        for (std::size_t i = 0; i < n; ++i) data(i, j) = col[i];
    }
    Eigen::RowVectorXd mean = data.colwise().mean();
    data.rowwise() -= mean;
    Eigen::VectorXd sd = (data.colwise().squaredNorm() / double(n)).cwiseSqrt();
    Eigen::MatrixXd corr(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            double denom = sd(a) * sd(b) * double(n);
            corr(a, b) = denom > 0 ? data.col(a).dot(data.col(b)) / denom : (a == b ? 1.0 : 0.0);
        }
    }
    return corr;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

double fisher_z_statistic(double r, std::size_t n, std::size_t z_count) {
    double limit = 1.0 - kCorrClamp;
    r = std::clamp(r, -limit, limit);
    double df = static_cast<double>(n) - static_cast<double>(z_count) - 3.0;
    return 0.5 * std::log((1.0 + r) / (1.0 - r)) * std::sqrt(df);
}

CiTestOutcome fisher_z(const Dataset& d, const std::string& x, const std::string& y,
                       const std::vector<std::string>& z) {
    if (d.row_count() <= z.size() + 3)
        throw DomainError("need more than |z| + 3 rows for the partial correlation test");
    std::vector<std::string> cols{x, y};
    cols.insert(cols.end(), z.begin(), z.end());
    Eigen::MatrixXd corr = correlation_matrix(d, cols);

    double r;
    const int kz = static_cast<int>(z.size());
    if (kz == 0) {
        r = corr(0, 1);
    } else {
        Eigen::MatrixXd rzz = corr.block(2, 2, kz, kz);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(rzz);
        if (!lu.isInvertible()) {
            std::vector<std::string> collinear(z.begin(), z.end());
            throw DomainError("singular correlation matrix; collinear set: {" +
                              join_names(collinear) + "}");
        }
        Eigen::VectorXd rxz = corr.block(0, 2, 1, kz).transpose();
        Eigen::VectorXd ryz = corr.block(1, 2, 1, kz).transpose();
        Eigen::VectorXd sx = lu.solve(rxz);
        Eigen::VectorXd sy = lu.solve(ryz);
        double vx = 1.0 - rxz.dot(sx);
        double vy = 1.0 - ryz.dot(sy);
        if (vx <= kCorrClamp) {
            std::vector<std::string> collinear{x};
            collinear.insert(collinear.end(), z.begin(), z.end());
            throw DomainError("singular correlation matrix; collinear set: {" +
                              join_names(collinear) + "}");
        }
        if (vy <= kCorrClamp) {
            std::vector<std::string> collinear{y};
            collinear.insert(collinear.end(), z.begin(), z.end());
            throw DomainError("singular correlation matrix; collinear set: {" +
                              join_names(collinear) + "}");
        }
        r = (corr(0, 1) - rxz.dot(sy)) / std::sqrt(vx * vy);
    }

    CiTestOutcome out;
    out.statistic = fisher_z_statistic(r, d.row_count(), z.size());
    out.p_value = two_sided_normal_p(out.statistic);
    return out;
}

namespace {

CiTestOutcome chi_square_codes(const std::vector<int>& xc, int x_levels,
                               const std::vector<int>& yc, int y_levels,
                               const std::vector<std::vector<int>>& zc, double min_expected) {
    const std::size_t n = xc.size();
    std::map<std::vector<int>, std::vector<std::size_t>> strata;
    std::vector<int> key(zc.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < zc.size(); ++j) key[j] = zc[j][i];
        strata[key].push_back(i);
    }

    double stat = 0.0;
    double df = 0.0;
    bool warn = false;
    std::vector<double> table(static_cast<std::size_t>(x_levels) * y_levels);
    std::vector<double> rowsum(x_levels), colsum(y_levels);
    for (const auto& [zkey, rows] : strata) {
        std::fill(table.begin(), table.end(), 0.0);
        std::fill(rowsum.begin(), rowsum.end(), 0.0);
        std::fill(colsum.begin(), colsum.end(), 0.0);
        for (std::size_t i : rows) {
            table[static_cast<std::size_t>(xc[i]) * y_levels + yc[i]] += 1.0;
            rowsum[xc[i]] += 1.0;
            colsum[yc[i]] += 1.0;
        }
        double total = static_cast<double>(rows.size());
        int nonzero_rows = 0, nonzero_cols = 0;
        for (int a = 0; a < x_levels; ++a)
            if (rowsum[a] > 0) ++nonzero_rows;
        for (int b = 0; b < y_levels; ++b)
            if (colsum[b] > 0) ++nonzero_cols;
        if (nonzero_rows < 2 || nonzero_cols < 2) continue;
        for (int a = 0; a < x_levels; ++a) {
            if (rowsum[a] == 0) continue;
            for (int b = 0; b < y_levels; ++b) {
                if (colsum[b] == 0) continue;
                double expected = rowsum[a] * colsum[b] / total;
                if (expected < min_expected) warn = true;
                double o = table[static_cast<std::size_t>(a) * y_levels + b];
                stat += (o - expected) * (o - expected) / expected;
            }
        }
        df += static_cast<double>(nonzero_rows - 1) * (nonzero_cols - 1);
    }

    CiTestOutcome out;
    out.statistic = stat;
    out.low_count_warning = warn;
    out.p_value = df > 0 ? boost::math::gamma_q(df / 2.0, stat / 2.0) : 1.0;
    return out;
}

}  // namespace

CiTestOutcome chi_square(const Dataset& d, const std::string& x, const std::string& y,
                         const std::vector<std::string>& z, double min_expected) {
    const auto& xc = d.categorical(x);
    const auto& yc = d.categorical(y);
    std::vector<std::vector<int>> zc;
    for (const auto& name : z) zc.push_back(d.categorical(name).codes);
    return chi_square_codes(xc.codes, static_cast<int>(xc.levels.size()), yc.codes,
                            static_cast<int>(yc.levels.size()), zc, min_expected);
}

namespace {

// Joint code of several categorical columns, mixed radix.
std::pair<std::vector<int>, int> joint_codes(const Dataset& d,
                                             const std::vector<std::string>& names) {
    std::vector<int> codes(d.row_count(), 0);
    long long levels = 1;
    for (const auto& name : names) {
        const auto& col = d.categorical(name);
        int k = static_cast<int>(col.levels.size());
        for (std::size_t i = 0; i < codes.size(); ++i)
            codes[i] = codes[i] * k + col.codes[i];
        levels *= k;
        if (levels > 1'000'000) throw DomainError("joint categorical witness has too many levels");
    }
    return {std::move(codes), static_cast<int>(levels)};
}

}  // namespace

ModelReport test_model(const CausalGraph& g, const VariableOrder& order, const Dataset& d,
                       double alpha) {
    for (int v = 0; v < g.node_count(); ++v)
        if (!d.has_column(g.name(v)))
            throw DomainError("graph node " + g.name(v) + " has no data column");

    std::vector<CiStatement> statements;
    list_ci(g, order, [&](const CiStatement& s) { statements.push_back(s); });

    ModelReport report;
    report.alpha = alpha;
    report.dropped_rows = d.dropped_row_count();
    for (const auto& stmt : statements) {
        CiTestResult res;
        res.statement = stmt;

        std::vector<std::string> wn, zn;
        for (int v : stmt.w) wn.push_back(g.name(v));
        for (int v : stmt.z) zn.push_back(g.name(v));
        std::sort(wn.begin(), wn.end());
        std::string xn = g.name(stmt.x);

        std::vector<std::string> all{xn};
        all.insert(all.end(), wn.begin(), wn.end());
        all.insert(all.end(), zn.begin(), zn.end());
        bool any_cont = false, any_cat = false;
        for (const auto& c : all)
            (d.type_of(c) == ColumnType::continuous ? any_cont : any_cat) = true;

        try {
            if (any_cont && any_cat) {
                throw DomainError("statement mixes continuous and categorical columns");
            } else if (any_cont) {
                res.method = TestMethod::fisher_z;
                // Chain decomposition over the witness set; the sub-tests
                // are combined by Sidak's min-p rule. A degenerate sub-test
                // (a variable fully explained by its conditioning set) adds
                // no testable signal and is skipped; the statement errors
                // only when every sub-test degenerates.
                double min_p = 1.0;
                double stat_at_min = 0.0;
                std::size_t tested_subs = 0;
                std::string first_error;
                std::vector<std::string> cond = zn;
                for (std::size_t i = 0; i < wn.size(); ++i) {
                    try {
                        CiTestOutcome o = fisher_z(d, xn, wn[i], cond);
                        ++tested_subs;
                        if (o.p_value < min_p) {
                            min_p = o.p_value;
                            stat_at_min = o.statistic;
                        }
                    } catch (const DomainError& e) {
                        if (first_error.empty()) first_error = e.what();
                    }
                    cond.push_back(wn[i]);
                }
                if (tested_subs == 0) throw DomainError(first_error);
                res.outcome.statistic = stat_at_min;
                res.outcome.p_value =
                    1.0 - std::pow(1.0 - min_p, static_cast<double>(tested_subs));
            } else {
                res.method = TestMethod::chi_square;
                auto [wcodes, wlevels] = joint_codes(d, wn);
                std::vector<std::vector<int>> zc;
                for (const auto& name : zn) zc.push_back(d.categorical(name).codes);
                const auto& xc = d.categorical(xn);
                res.outcome = chi_square_codes(xc.codes, static_cast<int>(xc.levels.size()),
                                               wcodes, wlevels, zc, 5.0);
            }
            res.violated = res.outcome.p_value < alpha;
            ++report.tested;
            ++(res.violated ? report.violated : report.consistent);
        } catch (const DomainError& e) {
            res.error = e.what();
            ++report.errored;
        }
        report.results.push_back(std::move(res));
    }
    return report;
}

}  // namespace clmp
