#pragma once

#include "hcts/dataset.hpp"
#include "hcts/error.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/time_series.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// Plain-text formats: one-sample-per-line series files, the CSV dataset
// manifest, and the CSV feature matrix.
namespace hcts::io {

namespace fs = std::filesystem;

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string where(const fs::path& file, std::size_t line, std::size_t column) {
    return file.string() + ":" + std::to_string(line) + ":" + std::to_string(column);
}

inline double parse_double(std::string_view s, const fs::path& file, std::size_t line, std::size_t column) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw Error(ErrorKind::ParseError,
                    where(file, line, column + static_cast<std::size_t>(res.ptr - s.data())) +
                        ": expected a finite number, got '" + std::string(s) + "'");
    return v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::MissingFile, "cannot open '" + path.string() + "'");
    return in;
}

inline std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::IoError, "cannot write '" + path.string() + "'");
    return out;
}

// ---------------------------------------------------------------------------
// Series files

/// One sample per line; the token "nan" marks a missing sample. Blank lines
/// are ignored.
inline TimeSeries read_series_file(const fs::path& path, std::string id, double sample_rate_hz = kFhrSampleRateHz) {
    auto in = open_input(path);
    std::vector<double> values;
    std::vector<bool> missing;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto tok = trim(line);
        if (tok.empty()) continue;
        if (tok == "nan") {
            values.push_back(0.0);
            missing.push_back(true);
        } else {
            const auto col = static_cast<std::size_t>(tok.data() - line.data()) + 1;
            values.push_back(parse_double(tok, path, lineno, col));
            missing.push_back(false);
        }
    }
    require(!values.empty(), ErrorKind::ParseError, path.string() + ": series file has no samples");
    return TimeSeries(std::move(id), std::move(values), std::move(missing), sample_rate_hz);
}

inline void write_series_file(const fs::path& path, const TimeSeries& s) {
    auto out = open_output(path);
    for (std::size_t i = 0; i < s.size(); ++i) out << (s.missing()[i] ? std::string("nan") : format_double(s.values()[i])) << '\n';
    require(out.good(), ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Manifest

struct ManifestRecord {
    std::string id;
    std::string series_file; // relative to the manifest's directory unless absolute
    std::optional<double> cord_ph;
    bool compromise = false;
    Split split = Split::Unassigned;
};

inline constexpr std::string_view kManifestHeader = "id,series_file,cord_ph,compromise,split";

inline bool parse_bool(std::string_view s, const fs::path& file, std::size_t line, std::size_t column) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false" || s.empty()) return false;
    throw Error(ErrorKind::ParseError, where(file, line, column) + ": expected 0/1/true/false, got '" + std::string(s) + "'");
}

inline std::vector<ManifestRecord> read_manifest(const fs::path& path) {
    auto in = open_input(path);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorKind::ParseError, path.string() + ": manifest is empty");
    const auto header = split_csv_line(line);
    const auto expected = split_csv_line(kManifestHeader);
    require(header == expected, ErrorKind::ParseError,
            where(path, 1, 1) + ": header must be '" + std::string(kManifestHeader) + "'");

    std::vector<ManifestRecord> records;
    std::set<std::string, std::less<>> ids;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        if (trim(line).empty()) continue;
        const auto f = split_csv_line(line);
        require(f.size() == 5, ErrorKind::ParseError,
                where(path, lineno, 1) + ": expected 5 fields, found " + std::to_string(f.size()));
        auto column_of = [&](std::size_t k) { return static_cast<std::size_t>(f[k].data() - line.data()) + 1; };
        ManifestRecord r;
        r.id = std::string(f[0]);
        require(!r.id.empty(), ErrorKind::ParseError, where(path, lineno, 1) + ": empty id");
        require(ids.insert(r.id).second, ErrorKind::DuplicateId, where(path, lineno, 1) + ": duplicate id '" + r.id + "'");
        r.series_file = std::string(f[1]);
        require(!r.series_file.empty(), ErrorKind::ParseError, where(path, lineno, column_of(1)) + ": empty series_file");
        if (!f[2].empty() && f[2] != "nan") r.cord_ph = parse_double(f[2], path, lineno, column_of(2));
        r.compromise = parse_bool(f[3], path, lineno, column_of(3));
        try {
            r.split = parse_split(f[4]);
        } catch (const Error&) {
            throw Error(ErrorKind::ParseError, where(path, lineno, column_of(4)) + ": split must be train, test or unassigned");
        }
        records.push_back(std::move(r));
    }
    return records;
}

inline void write_manifest(const fs::path& path, const std::vector<ManifestRecord>& records) {
    auto out = open_output(path);
    out << kManifestHeader << '\n';
    for (const auto& r : records) {
        out << r.id << ',' << r.series_file << ',' << (r.cord_ph ? format_double(*r.cord_ph) : std::string()) << ','
            << (r.compromise ? 1 : 0) << ',' << to_string(r.split) << '\n';
    }
    require(out.good(), ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

inline fs::path resolve(const fs::path& manifest, const std::string& file) {
    const fs::path p(file);
    return p.is_absolute() ? p : manifest.parent_path() / p;
}

/// Reads the manifest and every series file it references.
inline LabeledDataset ingest_dataset(const fs::path& manifest_path, double sample_rate_hz = kFhrSampleRateHz) {
    LabeledDataset ds;
    for (const auto& r : read_manifest(manifest_path)) {
        const auto file = resolve(manifest_path, r.series_file);
        require(fs::exists(file), ErrorKind::MissingFile, "series file '" + file.string() + "' (id '" + r.id + "') does not exist");
        ds.series.push_back(read_series_file(file, r.id, sample_rate_hz));
        ds.outcomes.push_back({r.id, r.cord_ph, r.compromise, r.split});
    }
    ds.validate();
    return ds;
}

// ---------------------------------------------------------------------------
// Feature matrix

inline std::string format_cell(const FeatureValue& v) {
    if (v.is_finite()) return format_double(v.value());
    return *v.special_tag() == Special::Degenerate ? "NaN" : "Inf";
}

inline FeatureValue parse_cell(std::string_view s, const fs::path& file, std::size_t line, std::size_t column) {
    if (s == "NaN" || s == "nan") return FeatureValue::degenerate();
    if (s == "Inf" || s == "-Inf" || s == "inf" || s == "-inf") return FeatureValue::not_finite();
    return FeatureValue::of(parse_double(s, file, line, column));
}

/// Header "id,<feature names>", then one row per series. Degenerate cells are
/// written "NaN" and other non-finite cells "Inf".
inline void write_matrix_csv(const fs::path& path, const FeatureMatrix& m) {
    auto out = open_output(path);
    out << "id";
    for (const auto& c : m.col_names()) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        require(m.row_ids()[r].find(',') == std::string::npos, ErrorKind::InvalidArgument,
                "series id '" + m.row_ids()[r] + "' contains a comma");
        out << m.row_ids()[r];
        for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << format_cell(m.at(r, c));
        out << '\n';
    }
    require(out.good(), ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

inline FeatureMatrix read_matrix_csv(const fs::path& path, Provenance provenance = {}) {
    auto in = open_input(path);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorKind::ParseError, path.string() + ": matrix file is empty");
    const auto header = split_csv_line(line);
    require(header.size() >= 1 && header[0] == "id", ErrorKind::ParseError, where(path, 1, 1) + ": first column must be 'id'");
    std::vector<std::string> names(header.begin() + 1, header.end());
    std::vector<std::string> ids;
    std::vector<FeatureValue> cells;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        if (trim(line).empty()) continue;
        const auto f = split_csv_line(line);
        require(f.size() == header.size(), ErrorKind::ParseError,
                where(path, lineno, 1) + ": expected " + std::to_string(header.size()) + " fields");
        ids.emplace_back(f[0]);
        for (std::size_t k = 1; k < f.size(); ++k)
            cells.push_back(parse_cell(f[k], path, lineno, static_cast<std::size_t>(f[k].data() - line.data()) + 1));
    }
    return FeatureMatrix(std::move(ids), std::move(names), std::move(cells), std::move(provenance));
}

} // namespace hcts::io
