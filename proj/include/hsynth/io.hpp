#ifndef HSYNTH_IO_HPP
#define HSYNTH_IO_HPP

#include <string>
#include <vector>

#include "hsynth/fields.hpp"
#include "hsynth/operator.hpp"
#include "hsynth/scenario.hpp"
#include "hsynth/solver.hpp"

namespace hsynth {

// Every text output starts with this line.
inline constexpr const char* kFormatVersionLine = "format-version: 1";

/// Parses a scenario document (YAML). Throws ParseError citing the line and
/// field at fault. "auto" control radii are resolved with the defaults.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Serializes a scenario in the same schema parse_scenario reads, with all
/// radii resolved.
std::string scenario_to_yaml(const Scenario& s);

/// Delimited text: coordinates, total, target, mismatch, label.
void write_field_grid(const std::string& path, const FieldGrid& grid);

/// Two columns: index (1-based), sigma.
void write_spectrum(const std::string& path, const WeightedSvd<double>& svd);

/// Columns: <parameter>, discrepancy, energy.
struct TableRow {
    double parameter;
    double discrepancy;
    double energy;
};
void write_table(const std::string& path, const std::string& parameter_name, const std::vector<TableRow>& rows);

/// Binary dump: 8-byte magic "HSKOP001", then uint64 rows, cols, and the
/// singular value count, then rows*cols row-major float64 matrix entries,
/// then the singular values. Native (little-endian) byte order.
void write_operator_dump(const std::string& path, const ForwardOperator<double>& K);

struct OperatorDump {
    MatrixXd matrix;
    VectorXd singular_values;
};
OperatorDump read_operator_dump(const std::string& path);

}  // namespace hsynth

#endif  // HSYNTH_IO_HPP
