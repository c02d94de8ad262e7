#include "hdist/io.hpp"

#include "hdist/detail/binary.hpp"

#include <json.hpp>

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hdist {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

std::ifstream open_input(const std::string& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    return out;
}

PointSet to_point_set(const std::vector<Vector>& rows, const std::string& path) {
    if (rows.empty()) throw ParseError(path + ": no points");
    return PointSet(rows);
}

}  // namespace

DatasetFormat format_from_path(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "fvecs") return DatasetFormat::FvecsBinary;
    if (ext == "csv") return DatasetFormat::Csv;
    if (ext == "jsonl") return DatasetFormat::JsonLines;
    throw ParseError(path + ": unknown dataset extension (use .fvecs, .csv or .jsonl)");
}

std::optional<DatasetFormat> parse_format_name(const std::string& name) {
    if (name == "fvecs") return DatasetFormat::FvecsBinary;
    if (name == "csv") return DatasetFormat::Csv;
    if (name == "jsonl") return DatasetFormat::JsonLines;
    return std::nullopt;
}

PointSet read_fvecs(const std::string& path) {
    std::ifstream in = open_input(path, std::ios::binary);
    std::vector<Vector> rows;
    Index dim = -1;
    while (true) {
        std::int32_t d;
        {
            char head[4];
            in.read(head, 4);
            if (in.gcount() == 0 && in.eof()) break;
            if (in.gcount() != 4) throw ParseError(path + ": truncated fvecs record header");
            unsigned char bytes[4];
            std::memcpy(bytes, head, 4);
            std::uint32_t raw = static_cast<std::uint32_t>(bytes[0]) |
                                (static_cast<std::uint32_t>(bytes[1]) << 8) |
                                (static_cast<std::uint32_t>(bytes[2]) << 16) |
                                (static_cast<std::uint32_t>(bytes[3]) << 24);
            std::memcpy(&d, &raw, 4);
        }
        if (d < 1) throw ParseError(path + ": fvecs record with nonpositive dimension");
        if (dim < 0) dim = d;
        if (d != dim) throw ParseError(path + ": fvecs records with mixed dimensions");
        Vector v(d);
        for (std::int32_t i = 0; i < d; ++i) {
            float f;
            try {
                f = detail::read_le<float>(in);
            } catch (const std::runtime_error&) {
                throw ParseError(path + ": truncated fvecs record payload");
            }
            v(i) = static_cast<double>(f);
        }
        rows.push_back(std::move(v));
    }
    return to_point_set(rows, path);
}

void write_fvecs(const std::string& path, const PointSet& points) {
    std::ofstream out = open_output(path, std::ios::binary);
    for (Index j = 0; j < points.size(); ++j) {
        detail::write_le<std::int32_t>(out, static_cast<std::int32_t>(points.dim()));
        for (Index i = 0; i < points.dim(); ++i)
            detail::write_le<float>(out, static_cast<float>(points.data()(i, j)));
    }
    if (!out) throw ParseError(path + ": write failed");
}

PointSet read_csv(const std::string& path) {
    std::ifstream in = open_input(path, std::ios::in);
    std::vector<Vector> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t consumed = 0;
                const double v = std::stod(cell, &consumed);
                while (consumed < cell.size() &&
                       std::isspace(static_cast<unsigned char>(cell[consumed])))
                    ++consumed;
                if (consumed != cell.size()) throw std::invalid_argument(cell);
                values.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": not a numeric cell: '" + cell + "'");
            }
        }
        if (values.empty())
            throw ParseError(path + ":" + std::to_string(line_no) + ": empty row");
        rows.push_back(Eigen::Map<const Vector>(values.data(),
                                                static_cast<Index>(values.size())));
        if (rows.back().size() != rows.front().size())
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": rows with mixed dimensions");
    }
    return to_point_set(rows, path);
}

void write_csv(const std::string& path, const PointSet& points) {
    std::ofstream out = open_output(path, std::ios::out);
    out.precision(17);
    for (Index j = 0; j < points.size(); ++j) {
        for (Index i = 0; i < points.dim(); ++i) {
            if (i > 0) out << ',';
            out << points.data()(i, j);
        }
        out << '\n';
    }
    if (!out) throw ParseError(path + ": write failed");
}

std::vector<JsonlRecord> read_jsonl(const std::string& path) {
    std::ifstream in = open_input(path, std::ios::in);
    std::vector<JsonlRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("vec") || !obj["vec"].is_array())
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected an object with a numeric-array field 'vec'");
        const auto& arr = obj["vec"];
        JsonlRecord record;
        record.vec.resize(static_cast<Index>(arr.size()));
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number())
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": 'vec' entries must be numbers");
            record.vec(static_cast<Index>(i)) = arr[i].get<double>();
        }
        if (obj.contains("entity")) {
            if (!obj["entity"].is_string())
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": 'entity' must be a string");
            record.entity = obj["entity"].get<std::string>();
        }
        records.push_back(std::move(record));
    }
    if (records.empty()) throw ParseError(path + ": no points");
    return records;
}

void write_jsonl(const std::string& path, const PointSet& points, const std::string& entity) {
    std::ofstream out = open_output(path, std::ios::out);
    for (Index j = 0; j < points.size(); ++j) {
        nlohmann::ordered_json obj;
        obj["vec"] = std::vector<double>(points.data().col(j).begin(),
                                         points.data().col(j).end());
        if (!entity.empty()) obj["entity"] = entity;
        out << obj.dump() << '\n';
    }
    if (!out) throw ParseError(path + ": write failed");
}

PointSet read_dataset(const std::string& path, DatasetFormat format,
                      const std::string& entity) {
    if (!entity.empty() && format != DatasetFormat::JsonLines)
        throw ParseError(path + ": entity selection requires the jsonl format");
    switch (format) {
        case DatasetFormat::FvecsBinary: return read_fvecs(path);
        case DatasetFormat::Csv: return read_csv(path);
        case DatasetFormat::JsonLines: {
            const auto records = read_jsonl(path);
            std::vector<Vector> rows;
            for (const auto& record : records)
                if (entity.empty() || record.entity == entity) rows.push_back(record.vec);
            if (rows.empty())
                throw ParseError(path + ": no rows match entity '" + entity + "'");
            return to_point_set(rows, path);
        }
    }
    throw ParseError(path + ": unknown dataset format");
}

void write_dataset(const std::string& path, DatasetFormat format, const PointSet& points) {
    switch (format) {
        case DatasetFormat::FvecsBinary: write_fvecs(path, points); return;
        case DatasetFormat::Csv: write_csv(path, points); return;
        case DatasetFormat::JsonLines: write_jsonl(path, points); return;
    }
    throw ParseError(path + ": unknown dataset format");
}

}  // namespace hdist
