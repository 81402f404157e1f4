#include "core/dataset.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace zsl {

namespace {

constexpr char kFeatureMagic[4] = {'Z', 'S', 'F', 'B'};
constexpr std::uint32_t kFeatureVersion = 1;

// Refuse to allocate for absurd header values in corrupt files.
constexpr std::uint64_t kMaxFeatureCells = 1ull << 31;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_attr_cell(const std::string& cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad attribute value '" + cell + "'");
    return value;
}

void write_exact(std::ofstream& out, const void* data, std::size_t len, const std::string& path) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

void put_u32le(std::ofstream& out, std::uint32_t v, const std::string& path) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    write_exact(out, b, 4, path);
}

std::uint32_t get_u32le(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) fail(ErrorCode::format, "truncated file: " + path);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

struct CsvRow {
    std::string name;
    bool seen = false;
    Vector values;
    std::size_t data_index = 0;  // 0-based position among data rows
};

}  // namespace

AttributeMatrix load_attributes(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open attribute file: " + path);

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) fail(ErrorCode::parse, "empty attribute file: " + path);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "class" || header[1] != "role")
        fail(ErrorCode::parse, "line 1: header must start with 'class,role' and have at least one attribute column");
    const std::size_t dim_a = header.size() - 2;

    std::vector<CsvRow> rows;
    std::unordered_set<std::string> names_seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto cells = split_csv_line(line);
        if (cells.size() != dim_a + 2)
            fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(dim_a + 2) + " cells, got " + std::to_string(cells.size()));
        CsvRow row;
        row.name = cells[0];
        if (row.name.empty()) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": empty class name");
        if (!names_seen.insert(row.name).second)
            fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": duplicate class name '" + row.name + "'");
        if (cells[1] == "seen")
            row.seen = true;
        else if (cells[1] == "unseen")
            row.seen = false;
        else
            fail(ErrorCode::parse,
                 "line " + std::to_string(line_no) + ": unknown role '" + cells[1] + "' (expected seen|unseen)");
        row.values.reserve(dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) row.values.push_back(parse_attr_cell(cells[2 + i], line_no));
        row.data_index = rows.size();
        rows.push_back(std::move(row));
    }

    AttributeMatrix attrs;
    attrs.dim_a = dim_a;
    attrs.num_seen = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CsvRow& r) {
        return r.seen;
    }));
    attrs.num_unseen = rows.size() - attrs.num_seen;
    if (attrs.num_seen == 0 || attrs.num_unseen == 0)
        fail(ErrorCode::parse, path + ": need at least one seen and one unseen class");

    // Stable seen-first reorder: seen rows in file order, then unseen rows in
    // file order; source_rows records where each class came from.
    attrs.vectors = Matrix(rows.size(), dim_a);
    attrs.class_names.reserve(rows.size());
    attrs.source_rows.reserve(rows.size());
    auto emit = [&](const CsvRow& row) {
        const std::size_t k = attrs.class_names.size();
        std::copy(row.values.begin(), row.values.end(), attrs.vectors.row(k).begin());
        attrs.class_names.push_back(row.name);
        attrs.source_rows.push_back(row.data_index);
    };
    for (const CsvRow& row : rows)
        if (row.seen) emit(row);
    for (const CsvRow& row : rows)
        if (!row.seen) emit(row);
    return attrs;
}

void save_attributes(const AttributeMatrix& attrs, const std::string& path) {
    if (attrs.num_classes() == 0 || attrs.dim_a == 0)
        fail(ErrorCode::invalid_argument, "save_attributes: empty attribute matrix");
    if (attrs.class_names.size() != attrs.num_classes())
        fail(ErrorCode::invalid_argument, "save_attributes: class name count mismatch");
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    out << "class,role";
    for (std::size_t i = 0; i < attrs.dim_a; ++i) out << ",a" << i;
    out << "\n";
    char buf[40];
    for (std::size_t k = 0; k < attrs.num_classes(); ++k) {
        out << attrs.class_names[k] << ',' << (k < attrs.num_seen ? "seen" : "unseen");
        for (double v : attrs.attribute(k)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << "\n";
    }
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

FeatureSet load_features(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open feature file: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kFeatureMagic))
        fail(ErrorCode::format, "bad magic (not a feature file): " + path);
    const std::uint32_t version = get_u32le(in, path);
    if (version != kFeatureVersion)
        fail(ErrorCode::format, "unsupported feature file version " + std::to_string(version) + ": " + path);

    const std::uint32_t n = get_u32le(in, path);
    const std::uint32_t d = get_u32le(in, path);
    const std::uint32_t num_classes = get_u32le(in, path);
    if (static_cast<std::uint64_t>(n) * d > kMaxFeatureCells)
        fail(ErrorCode::format, "implausible feature dimensions in header: " + path);
    if (d == 0 && n > 0) fail(ErrorCode::format, "zero feature dimension with nonzero sample count: " + path);

    FeatureSet set;
    set.dim = d;
    set.num_classes = num_classes;
    set.features = Matrix(n, d);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * d; ++i) {
        const std::uint32_t bits = get_u32le(in, path);
        set.features.data()[i] = static_cast<double>(std::bit_cast<float>(bits));
    }
    set.labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        set.labels[i] = get_u32le(in, path);
        if (set.labels[i] >= num_classes)
            fail(ErrorCode::format, "sample " + std::to_string(i) + " has label " + std::to_string(set.labels[i]) +
                                        " >= declared class count " + std::to_string(num_classes) + ": " + path);
    }
    if (in.peek() != std::ifstream::traits_type::eof())
        fail(ErrorCode::format, "trailing bytes after payload: " + path);
    return set;
}

void save_features(const FeatureSet& set, const std::string& path) {
    if (set.features.rows() != set.size() || set.features.cols() != set.dim)
        fail(ErrorCode::invalid_argument, "save_features: inconsistent feature set");
    for (std::uint32_t label : set.labels)
        if (label >= set.num_classes)
            fail(ErrorCode::invalid_argument, "save_features: label >= num_classes");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    write_exact(out, kFeatureMagic, 4, path);
    put_u32le(out, kFeatureVersion, path);
    put_u32le(out, static_cast<std::uint32_t>(set.size()), path);
    put_u32le(out, static_cast<std::uint32_t>(set.dim), path);
    put_u32le(out, static_cast<std::uint32_t>(set.num_classes), path);
    for (double v : set.features.data()) put_u32le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)), path);
    for (std::uint32_t label : set.labels) put_u32le(out, label, path);
}

Standardization fit_standardization(const FeatureSet& train) {
    if (train.size() == 0) fail(ErrorCode::invalid_argument, "fit_standardization: empty training set");
    const std::size_t n = train.size();
    const std::size_t d = train.dim;
    Standardization s;
    s.mean.assign(d, 0.0);
    s.scale.assign(d, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = train.feature(i);
        for (std::size_t j = 0; j < d; ++j) s.mean[j] += x[j];
    }
    for (double& m : s.mean) m /= static_cast<double>(n);
    Vector var(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = train.feature(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double c = x[j] - s.mean[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] / static_cast<double>(n));
        if (sd >= 1e-12) s.scale[j] = sd;  // near-constant dimensions: center only
    }
    return s;
}

FeatureSet standardized(const FeatureSet& set, const Standardization& s) {
    if (s.mean.size() != set.dim || s.scale.size() != set.dim)
        fail(ErrorCode::dimension_mismatch, "standardized: transform dimension " + std::to_string(s.mean.size()) +
                                                " vs features of dimension " + std::to_string(set.dim));
    FeatureSet out = set;
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto x = out.features.row(i);
        for (std::size_t j = 0; j < out.dim; ++j) x[j] = (x[j] - s.mean[j]) / s.scale[j];
    }
    return out;
}

SynthData synth_generate(const SynthSpec& spec) {
    if (spec.dim_a == 0 || spec.dim_d == 0 || spec.num_seen == 0 || spec.num_unseen == 0 ||
        spec.train_per_class == 0 || spec.test_per_class == 0)
        fail(ErrorCode::invalid_argument, "synth_generate: all counts must be >= 1");
    if (!(spec.noise_sigma >= 0.0)) fail(ErrorCode::invalid_argument, "synth_generate: noise_sigma must be >= 0");

    Rng rng(stream_seed(spec.seed, kStreamSynth));
    const std::size_t num_classes = spec.num_seen + spec.num_unseen;

    SynthData out;
    AttributeMatrix& attrs = out.attributes;
    attrs.dim_a = spec.dim_a;
    attrs.num_seen = spec.num_seen;
    attrs.num_unseen = spec.num_unseen;
    attrs.vectors = Matrix(num_classes, spec.dim_a);
    for (std::size_t k = 0; k < num_classes; ++k) {
        bool distinct = false;
        for (int attempt = 0; attempt < 100 && !distinct; ++attempt) {
            auto row = attrs.vectors.row(k);
            for (double& v : row) v = rng.coin() ? 1.0 : 0.0;
            distinct = true;
            for (std::size_t j = 0; j < k && distinct; ++j)
                if (std::equal(row.begin(), row.end(), attrs.vectors.row(j).begin())) distinct = false;
        }
        if (!distinct)
            fail(ErrorCode::invalid_argument, "synth_generate: could not draw a distinct attribute vector for class " +
                                                  std::to_string(k) + " after 100 attempts; increase dim_a");
        attrs.class_names.push_back(k < spec.num_seen ? "seen_" + std::to_string(k)
                                                      : "unseen_" + std::to_string(k - spec.num_seen));
        attrs.source_rows.push_back(k);
    }

    // Mixing matrix M: i.i.d. N(0, 1/a) entries, so prototype coordinates stay
    // O(1) regardless of the attribute dimension.
    Matrix& m = out.ground_truth_map;
    m = Matrix(spec.dim_d, spec.dim_a);
    const double inv_sqrt_a = 1.0 / std::sqrt(static_cast<double>(spec.dim_a));
    for (double& v : m.data()) v = rng.normal() * inv_sqrt_a;

    auto draw_samples = [&](FeatureSet& set, std::size_t klass, std::span<const double> proto, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t r = set.labels.size();
            auto row = set.features.row(r);
            for (std::size_t j = 0; j < spec.dim_d; ++j) {
                const double v = proto[j] + spec.noise_sigma * rng.normal();
                // Features are stored as f32 in the file format; quantize at
                // generation so in-memory data equals reloaded data exactly.
                row[j] = static_cast<double>(static_cast<float>(v));
            }
            set.labels.push_back(static_cast<std::uint32_t>(klass));
        }
    };
    auto init_set = [&](FeatureSet& set, std::size_t capacity) {
        set.dim = spec.dim_d;
        set.num_classes = num_classes;
        set.features = Matrix(capacity, spec.dim_d);
        set.labels.reserve(capacity);
    };
    init_set(out.train, spec.num_seen * spec.train_per_class);
    init_set(out.test_seen, spec.num_seen * spec.test_per_class);
    init_set(out.test_unseen, spec.num_unseen * spec.test_per_class);

    // Draw order is part of the determinism contract: per seen class, train
    // samples then test samples; then each unseen class.
    for (std::size_t k = 0; k < spec.num_seen; ++k) {
        const Vector proto = matvec(m, attrs.attribute(k));
        draw_samples(out.train, k, proto, spec.train_per_class);
        draw_samples(out.test_seen, k, proto, spec.test_per_class);
    }
    for (std::size_t k = spec.num_seen; k < num_classes; ++k) {
        const Vector proto = matvec(m, attrs.attribute(k));
        draw_samples(out.test_unseen, k, proto, spec.test_per_class);
    }
    return out;
}

}  // namespace zsl
