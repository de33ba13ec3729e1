#pragma once

#include <ostream>
#include <string>

#include "vortexcrit/analyze.hpp"
#include "vortexcrit/flow.hpp"
#include "vortexcrit/frenet.hpp"

namespace vortexcrit {

/// All floating output uses 17 significant digits (round-trip safe).
std::string fmt17(double v);

// Pointwise geometry.
void write_frenet_json(std::ostream& os, const FrenetSample& s);
void write_frenet_csv(std::ostream& os, const FrenetSample& s);

// Streamline CSV: t, z, x, y, z_pos, speed, kappa, alpha, F, S
// (geometry recomputed pointwise at each dense sample).
void write_streamline_csv(std::ostream& os, const VelocityField& field, const Streamline& s,
                          const TolerancePolicy& tol = {});
void write_streamline_json(std::ostream& os, const VelocityField& field, const Streamline& s,
                           const TolerancePolicy& tol = {});

// Disk probe CSV: t, defect_n, defect_b, axis_stretch
void write_disk_csv(std::ostream& os, const DiskProbeResult& r);
void write_disk_json(std::ostream& os, const DiskProbeResult& r);

void write_cauchy_csv(std::ostream& os, double t, const Vec3& omega);
void write_cauchy_json(std::ostream& os, double t, const Vec3& omega);

// Classification report: JSON schema with stable keys
//   {"field","box","resolution","tolerances","points","summary"}
// and a CSV mirror with one row per point.
void write_report_json(std::ostream& os, const ClassificationReport& rep);
void write_report_csv(std::ostream& os, const ClassificationReport& rep);

void write_compare_csv(std::ostream& os, const std::vector<PathComparison>& rows);
void write_compare_json(std::ostream& os, const std::vector<PathComparison>& rows);

/// Human-readable suite table: a deterministic row subsample, the worst row,
/// and a PASS/FAIL summary line.
void write_suite_text(std::ostream& os, const SuiteResult& suite);

}  // namespace vortexcrit
