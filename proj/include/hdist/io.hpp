#pragma once

#include "hdist/geometry.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hdist {

enum class DatasetFormat { FvecsBinary, Csv, JsonLines };

/// Thrown on malformed dataset files. The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Picks the format from the file extension (.fvecs, .csv, .jsonl).
DatasetFormat format_from_path(const std::string& path);
std::optional<DatasetFormat> parse_format_name(const std::string& name);

/// fvecs: per record a 32-bit little-endian count d followed by d 32-bit
/// little-endian floats; every record must share d. Values widen to 64-bit
/// on load and narrow (lossily) on write.
PointSet read_fvecs(const std::string& path);
void write_fvecs(const std::string& path, const PointSet& points);

/// csv: one point per row, numeric comma-separated columns, no header.
PointSet read_csv(const std::string& path);
void write_csv(const std::string& path, const PointSet& points);

/// jsonl: one object per line with a numeric-array field "vec" and an
/// optional string field "entity" for grouping rows into named sets.
struct JsonlRecord {
    Vector vec;
    std::string entity;  // empty when absent
};
std::vector<JsonlRecord> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const PointSet& points,
                 const std::string& entity = "");

/// Whole-file load in any format; for jsonl, `entity` selects one named
/// group (an empty selector loads every row).
PointSet read_dataset(const std::string& path, DatasetFormat format,
                      const std::string& entity = "");
void write_dataset(const std::string& path, DatasetFormat format, const PointSet& points);

}  // namespace hdist
