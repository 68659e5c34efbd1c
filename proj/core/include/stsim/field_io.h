#ifndef STSIM_FIELD_IO_H
#define STSIM_FIELD_IO_H

#include <string>

#include "stsim/points.h"

namespace stsim {

/// One row per point: x1..xk, t, value, 17 significant digits.
void write_field_csv(const FieldRealization& field, const std::string& path);

/// Flat little-endian float64 values in point-list order, plus a JSON
/// sidecar manifest (grid descriptor or explicit points, provenance,
/// byte order) at manifest_path.
void write_field_raw(const FieldRealization& field, const std::string& data_path,
                     const std::string& manifest_path);

/// Reads back what write_field_raw produced, bit-exactly.
FieldRealization read_field_raw(const std::string& data_path,
                                const std::string& manifest_path);

} // namespace stsim

#endif
