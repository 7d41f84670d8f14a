#pragma once

#include <complex>
#include <string>
#include <vector>

#include "so3fit/fit.hpp"
#include "so3fit/localize.hpp"
#include "so3fit/rotation.hpp"

namespace so3fit {

/// One parsed record: a rotation (given as an Euler triple, unit quaternion or
/// rotation matrix) and a complex value.
struct DataRecord {
    Rotation rotation;
    std::complex<double> value;
};

struct Dataset {
    std::vector<DataRecord> records;

    std::vector<Rotation> rotations() const;
    Eigen::VectorXcd values() const;
};

/// Parse a dataset file.  Malformed records raise ParseError naming the record
/// index; semantically invalid rotations (non-unit quaternion beyond 1e-6,
/// non-orthogonal matrix) raise ValidationError.
Dataset load_dataset(const std::string& path);

/// Parse a points file: same record schema, the value field optional.
std::vector<Rotation> load_points(const std::string& path);

/// Model files round-trip losslessly: save -> load -> save is byte-identical.
void save_model(const SplineModel& model, const std::string& path);
SplineModel load_model(const std::string& path);

/// Serialized tag describing the ordering of the polynomial block.
inline constexpr const char* kModelRowOrderTag = "l-asc.iota-asc.nu-asc/v1";
inline constexpr int kModelFormatVersion = 1;

/// CSV of the table rows plus fitted-order footer comments.
std::string convergence_table_csv(const ConvergenceTable& table);
std::string convergence_table_json(const ConvergenceTable& table);

/// CKC verification report as JSON or as key/value CSV.
std::string ckc_report_json(const CkcReport& report, int precision, double rho);
std::string ckc_report_csv(const CkcReport& report, int precision, double rho);

/// Deterministic shortest-roundtrip formatting used in CSV output.
std::string format_double(double v);

} // namespace so3fit
