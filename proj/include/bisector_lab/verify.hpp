#pragma once

// Checks tying the counting engines to exact identities and explicit-constant
// inequalities (ASSERT rows), plus ratio dashboards for bounds whose
// constants are unspecified (REPORT rows).
//
// Gated checks need p = 3 mod 4 and throw Mod4Mismatch otherwise.
// Dashboard logarithms are natural logs with ln(1) taken as 1.

#include <vector>

#include "bisector_lab/distcount.hpp"
#include "bisector_lab/report.hpp"
#include "bisector_lab/sumprod.hpp"

namespace bisector_lab {

/// Counts shared by the planar checks, computed once.
struct PlaneCounts {
  std::size_t n = 0;
  std::size_t delta = 0;  // |Delta(E)|, 0 included
  Count second_moment = 0;
  Count t = 0;
  Count rect = 0;
  Count q = 0;
  Count para = 0;
  Count incidences = 0;
};

PlaneCounts plane_counts(const PlaneSet& e, unsigned threads = 1);
std::string describe(const PlaneSet& e);

/// Q <= 2 |Delta| (rect + n^2). Gated.
CheckReport check_hay(const PlaneSet& e, const PlaneCounts& c);
CheckReport check_hay(const PlaneSet& e);
/// para = rect + n^2 - n. Gated.
CheckReport check_paraboloid_identity(const PlaneSet& e, const PlaneCounts& c);
CheckReport check_paraboloid_identity(const PlaneSet& e);
/// T = incidences + n^2 - n. Gated.
CheckReport check_isosceles_identity(const PlaneSet& e, const PlaneCounts& c);
CheckReport check_isosceles_identity(const PlaneSet& e);
/// sum nu^2 <= n (T + n), counting the n triples a = b = c. Gated.
CheckReport check_doowon1(const PlaneSet& e, const PlaneCounts& c);
CheckReport check_doowon1(const PlaneSet& e);
/// sum nu^2 <= n T without the diagonal triples; a dashboard, since it fails
/// on small sets such as two points.
CheckReport report_doowon1_literal(const PlaneSet& e, const PlaneCounts& c);
/// n^4 / sum nu^2 <= |Delta|. Throws EmptySet.
CheckReport cs_delta_lower_bound(const PlaneSet& e, const PlaneCounts& c);
CheckReport cs_delta_lower_bound(const PlaneSet& e);

/// T against n^2 ln n + n^{5/3} Q^{4/15}.
CheckReport report_ben(const PlaneSet& e, const PlaneCounts& c);
CheckReport report_ben(const PlaneSet& e);
/// Two rows: T against n^2 ln n + |Delta|^{4/15} n^{33/15} + n^{5/3} |Delta|^{4/15} rect^{4/15},
/// and |Delta| against min{n^{12/19}, n^{20/19} / rect^{4/19}}. Gated.
std::vector<CheckReport> report_thm1_chain(const PlaneSet& e, const PlaneCounts& c);
std::vector<CheckReport> report_thm1_chain(const PlaneSet& e);

/// Every planar ASSERT check, with gated ones marked skipped for p = 1 mod 4.
std::vector<CheckReport> plane_assert_suite(const PlaneSet& e, const PlaneCounts& c);
/// Every planar REPORT row, gated ones skipped for p = 1 mod 4.
std::vector<CheckReport> plane_report_suite(const PlaneSet& e, const PlaneCounts& c);

/// Residue-set dashboards for the energy, popularity and growth bounds, plus
/// ASSERT rows for the exact internal identities.
std::vector<CheckReport> report_sumprod_suite(const ResidueSet& a);

/// Sorts by (name, context), the order reports are emitted in.
void sort_reports(std::vector<CheckReport>& reports);

}  // namespace bisector_lab
