#ifndef CLMP_CITEST_HPP
#define CLMP_CITEST_HPP

#include <string>
#include <vector>

#include "clmp/dataset.hpp"
#include "clmp/enumerate.hpp"
#include "clmp/graph.hpp"

namespace clmp {

struct CiTestOutcome {
    double statistic = 0.0;
    double p_value = 1.0;
    bool low_count_warning = false;  // chi-square strata with small expected counts
};

/// Fisher-z statistic for a partial correlation r at sample size n with
/// z_count conditioning variables: atanh(r) * sqrt(n - z_count - 3), with r
/// clamped to |r| <= 1 - 1e-12 before the transform.
double fisher_z_statistic(double r, std::size_t n, std::size_t z_count);

/// Partial correlation test of x against y given z on continuous columns.
/// Two-sided normal p-value. Throws DomainError when rows <= |z| + 3 or the
/// conditioning correlation matrix is singular (message names the collinear
/// columns).
CiTestOutcome fisher_z(const Dataset& d, const std::string& x, const std::string& y,
                       const std::vector<std::string>& z);

/// Conditional chi-square test of x against y given z on categorical
/// columns: contingency statistic summed over z-strata, df summed over
/// strata with nonzero margins. Strata with expected counts below
/// min_expected only set the warning flag.
CiTestOutcome chi_square(const Dataset& d, const std::string& x, const std::string& y,
                         const std::vector<std::string>& z, double min_expected = 5.0);

enum class TestMethod { fisher_z, chi_square };

struct CiTestResult {
    CiStatement statement;
    TestMethod method = TestMethod::fisher_z;
    CiTestOutcome outcome;
    bool violated = false;
    std::string error;  // nonempty: the statement could not be tested

    bool tested() const { return error.empty(); }
};

struct ModelReport {
    std::vector<CiTestResult> results;  // in list_ci emission order
    double alpha = 0.05;
    int tested = 0, consistent = 0, violated = 0, errored = 0;
    std::size_t dropped_rows = 0;

    bool any_violation() const { return violated > 0; }
};

/// Streams list_ci and tests each statement against the data at level
/// alpha: all-continuous statements with fisher_z (a multi-witness
/// statement is split into a chain of pairwise tests and combined by
/// Sidak's min-p rule), all-categorical ones with chi_square (witness sets
/// are tested jointly as one composite variable). Statements mixing column
/// types become per-statement error entries; the run continues.
ModelReport test_model(const CausalGraph& g, const VariableOrder& order, const Dataset& d,
                       double alpha);

}  // namespace clmp

#endif
