#include "pushrec/trial_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace pushrec {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& tok, const std::string& file, int line,
                          const std::string& field) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(file, line, field, "not a number: '" + tok + "'");
    if (!std::isfinite(v)) throw ParseError(file, line, field, "non-finite value");
    return v;
}

int parse_count_field(const std::string& tok, const std::string& file, int line,
                      const std::string& field) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(file, line, field, "not an integer count: '" + tok + "'");
    if (v < kCountMin || v > kCountMax)
        throw ParseError(file, line, field,
                         "count " + std::to_string(v) + " outside [0, 999]");
    return v;
}

const char* kRawFieldNames[14] = {"t",      "rhip",   "lhip", "rknee", "lknee",
                                  "rankle", "lankle", "force", "ax",   "ay",
                                  "az",     "gx",     "gy",   "gz"};

}  // namespace

RawTrial parse_trial(const std::string& text, const std::string& name) {
    const auto lines = split_lines(text);
    if (lines.size() < 5)
        throw ParseError(name, static_cast<int>(lines.size()) + 1, "header",
                         "truncated file: expected subject/condition preamble and data header");
    if (lines[0] != kSubjectHeader)
        throw ParseError(name, 1, "header",
                         "expected '" + std::string(kSubjectHeader) + "'");

    RawTrial trial;
    {
        const auto f = split_csv(lines[1]);
        if (f.size() != 5)
            throw ParseError(name, 2, "subject", "expected 5 metadata values, got " +
                                                     std::to_string(f.size()));
        trial.meta.height_m = parse_double_field(f[0], name, 2, "height_m");
        trial.meta.weight_kg = parse_double_field(f[1], name, 2, "weight_kg");
        try {
            trial.meta.sex = sex_from_string(f[2]);
            trial.meta.handedness = handedness_from_string(f[3]);
        } catch (const DataError& e) {
            throw ParseError(name, 2, "subject", e.what());
        }
        trial.meta.age_years = parse_double_field(f[4], name, 2, "age");
        if (!(trial.meta.height_m > 0))
            throw ParseError(name, 2, "height_m", "must be positive");
        if (!(trial.meta.weight_kg > 0))
            throw ParseError(name, 2, "weight_kg", "must be positive");
        if (!(trial.meta.age_years > 0))
            throw ParseError(name, 2, "age", "must be positive");
    }

    if (lines[2] != kConditionHeader)
        throw ParseError(name, 3, "header",
                         "expected '" + std::string(kConditionHeader) + "'");
    {
        const auto f = split_csv(lines[3]);
        if (f.size() != 3)
            throw ParseError(name, 4, "condition", "expected 3 condition values, got " +
                                                       std::to_string(f.size()));
        try {
            trial.condition.eyes = eyes_from_string(f[0]);
            trial.condition.lunging = lunging_from_string(f[1]);
            trial.condition.stance = stance_from_string(f[2]);
        } catch (const DataError& e) {
            throw ParseError(name, 4, "condition", e.what());
        }
    }

    if (lines[4] != kRawColumnsHeader)
        throw ParseError(name, 5, "header",
                         "expected '" + std::string(kRawColumnsHeader) + "'");

    double prev_t = -std::numeric_limits<double>::infinity();
    for (size_t i = 5; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const int lineno = static_cast<int>(i) + 1;
        const auto f = split_csv(lines[i]);
        if (f.size() != 14)
            throw ParseError(name, lineno, "row",
                             "expected 14 columns, got " + std::to_string(f.size()));
        RawSample s;
        s.t = parse_double_field(f[0], name, lineno, "t");
        if (!(s.t > prev_t))
            throw ParseError(name, lineno, "t", "timestamps must be strictly increasing");
        prev_t = s.t;
        for (int c = 0; c < 6; ++c)
            s.joint_counts[c] = parse_count_field(f[1 + c], name, lineno, kRawFieldNames[1 + c]);
        s.force_count = parse_count_field(f[7], name, lineno, "force");
        for (int a = 0; a < 3; ++a)
            s.accel_counts[a] = parse_count_field(f[8 + a], name, lineno, kRawFieldNames[8 + a]);
        for (int a = 0; a < 3; ++a)
            s.gyro_counts[a] = parse_count_field(f[11 + a], name, lineno, kRawFieldNames[11 + a]);
        trial.samples.push_back(s);
    }
    if (trial.samples.empty())
        throw ParseError(name, static_cast<int>(lines.size()) + 1, "row", "no data rows");

    trial.sample_rate_hz = RawTrial::derive_rate(trial.samples);
    return trial;
}

std::string serialize_trial(const RawTrial& trial) {
    std::string out;
    out += kSubjectHeader;
    out += '\n';
    out += format_double(trial.meta.height_m) + "," + format_double(trial.meta.weight_kg) +
           "," + to_string(trial.meta.sex) + "," + to_string(trial.meta.handedness) + "," +
           format_double(trial.meta.age_years) + "\n";
    out += kConditionHeader;
    out += '\n';
    out += to_string(trial.condition.eyes) + "," + to_string(trial.condition.lunging) + "," +
           to_string(trial.condition.stance) + "\n";
    out += kRawColumnsHeader;
    out += '\n';
    for (const RawSample& s : trial.samples) {
        out += format_double(s.t);
        for (int c : s.joint_counts) out += "," + std::to_string(c);
        out += "," + std::to_string(s.force_count);
        for (int c : s.accel_counts) out += "," + std::to_string(c);
        for (int c : s.gyro_counts) out += "," + std::to_string(c);
        out += '\n';
    }
    return out;
}

std::string serialize_converted(const ConvertedTrial& trial) {
    std::string out;
    out += kSubjectHeader;
    out += '\n';
    out += format_double(trial.meta.height_m) + "," + format_double(trial.meta.weight_kg) +
           "," + to_string(trial.meta.sex) + "," + to_string(trial.meta.handedness) + "," +
           format_double(trial.meta.age_years) + "\n";
    out += kConditionHeader;
    out += '\n';
    out += to_string(trial.condition.eyes) + "," + to_string(trial.condition.lunging) + "," +
           to_string(trial.condition.stance) + "\n";
    out += kConvertedColumnsHeader;
    out += '\n';
    const Eigen::Index n = trial.force.t.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        out += format_double(trial.force.t[i]);
        for (int c = 0; c < 6; ++c) out += "," + format_double(trial.joints[c].angle_deg[i]);
        out += "," + format_double(trial.force.force_n[i]);
        for (int a = 0; a < 3; ++a) out += "," + format_double(trial.imu.accel_g(i, a));
        for (int a = 0; a < 3; ++a) out += "," + format_double(trial.imu.gyro_dps(i, a));
        out += '\n';
    }
    return out;
}

ConvertedTrial parse_converted(const std::string& text, const std::string& name) {
    const auto lines = split_lines(text);
    if (lines.size() < 5)
        throw ParseError(name, static_cast<int>(lines.size()) + 1, "header",
                         "truncated file: expected subject/condition preamble and data header");
    if (lines[0] != kSubjectHeader)
        throw ParseError(name, 1, "header",
                         "expected '" + std::string(kSubjectHeader) + "'");

    ConvertedTrial trial;
    {
        const auto f = split_csv(lines[1]);
        if (f.size() != 5)
            throw ParseError(name, 2, "subject", "expected 5 metadata values");
        trial.meta.height_m = parse_double_field(f[0], name, 2, "height_m");
        trial.meta.weight_kg = parse_double_field(f[1], name, 2, "weight_kg");
        try {
            trial.meta.sex = sex_from_string(f[2]);
            trial.meta.handedness = handedness_from_string(f[3]);
        } catch (const DataError& e) {
            throw ParseError(name, 2, "subject", e.what());
        }
        trial.meta.age_years = parse_double_field(f[4], name, 2, "age");
    }
    if (lines[2] != kConditionHeader)
        throw ParseError(name, 3, "header",
                         "expected '" + std::string(kConditionHeader) + "'");
    {
        const auto f = split_csv(lines[3]);
        if (f.size() != 3)
            throw ParseError(name, 4, "condition", "expected 3 condition values");
        try {
            trial.condition.eyes = eyes_from_string(f[0]);
            trial.condition.lunging = lunging_from_string(f[1]);
            trial.condition.stance = stance_from_string(f[2]);
        } catch (const DataError& e) {
            throw ParseError(name, 4, "condition", e.what());
        }
    }
    if (lines[4] != kConvertedColumnsHeader)
        throw ParseError(name, 5, "header",
                         "expected '" + std::string(kConvertedColumnsHeader) + "'");

    std::vector<std::array<double, 14>> rows;
    double prev_t = -std::numeric_limits<double>::infinity();
    for (size_t i = 5; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const int lineno = static_cast<int>(i) + 1;
        const auto f = split_csv(lines[i]);
        if (f.size() != 14)
            throw ParseError(name, lineno, "row",
                             "expected 14 columns, got " + std::to_string(f.size()));
        std::array<double, 14> row;
        for (int c = 0; c < 14; ++c)
            row[c] = parse_double_field(f[c], name, lineno, "column " + std::to_string(c + 1));
        if (!(row[0] > prev_t))
            throw ParseError(name, lineno, "t", "timestamps must be strictly increasing");
        prev_t = row[0];
        rows.push_back(row);
    }
    if (rows.empty())
        throw ParseError(name, static_cast<int>(lines.size()) + 1, "row", "no data rows");

    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) t[i] = rows[i][0];

    for (Joint j : kJoints) {
        for (Side s : kSides) {
            const int c = channel_index(j, s);
            JointSeries& series = trial.joints[c];
            series.joint = j;
            series.side = s;
            series.t = t;
            series.angle_deg.resize(n);
            for (Eigen::Index i = 0; i < n; ++i) series.angle_deg[i] = rows[i][1 + c];
        }
    }
    trial.force.t = t;
    trial.force.force_n.resize(n);
    trial.imu.t = t;
    trial.imu.accel_g.resize(n, 3);
    trial.imu.gyro_dps.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        trial.force.force_n[i] = rows[i][7];
        for (int a = 0; a < 3; ++a) {
            trial.imu.accel_g(i, a) = rows[i][8 + a];
            trial.imu.gyro_dps(i, a) = rows[i][11 + a];
        }
    }
    std::vector<RawSample> stub(n);
    for (Eigen::Index i = 0; i < n; ++i) stub[static_cast<size_t>(i)].t = t[i];
    trial.sample_rate_hz = RawTrial::derive_rate(stub);
    return trial;
}

ColumnsFile read_columns(const std::string& text, const std::string& name) {
    const auto lines = split_lines(text);
    ColumnsFile f;
    size_t i = 0;
    // '#' lines and the value line that follows each are preamble
    while (i < lines.size() && !lines[i].empty() && lines[i][0] == '#') {
        f.preamble.push_back(lines[i]);
        if (i + 1 < lines.size()) f.preamble.push_back(lines[i + 1]);
        i += 2;
    }
    if (i >= lines.size())
        throw ParseError(name, static_cast<int>(i) + 1, "header", "missing data header");
    f.header = split_csv(lines[i]);
    if (f.header.empty() || f.header[0].empty())
        throw ParseError(name, static_cast<int>(i) + 1, "header", "missing column names");
    const size_t ncol = f.header.size();
    ++i;

    std::vector<std::vector<double>> rows;
    for (; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const int lineno = static_cast<int>(i) + 1;
        const auto toks = split_csv(lines[i]);
        if (toks.size() != ncol)
            throw ParseError(name, lineno, "row",
                             "expected " + std::to_string(ncol) + " columns, got " +
                                 std::to_string(toks.size()));
        std::vector<double> row(ncol);
        for (size_t c = 0; c < ncol; ++c)
            row[c] = parse_double_field(toks[c], name, lineno, f.header[c]);
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ParseError(name, static_cast<int>(lines.size()) + 1, "row", "no data rows");

    f.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ncol));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < ncol; ++c)
            f.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return f;
}

std::string serialize_columns(const ColumnsFile& f) {
    std::string out;
    for (const std::string& line : f.preamble) {
        out += line;
        out += '\n';
    }
    for (size_t c = 0; c < f.header.size(); ++c) {
        if (c) out += ',';
        out += f.header[c];
    }
    out += '\n';
    for (Eigen::Index r = 0; r < f.data.rows(); ++r) {
        for (Eigen::Index c = 0; c < f.data.cols(); ++c) {
            if (c) out += ',';
            out += format_double(f.data(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

RawTrial parse_trial_file(const std::string& path) {
    return parse_trial(read_text_file(path), path);
}

void write_trial_file(const std::string& path, const RawTrial& trial) {
    write_text_file(path, serialize_trial(trial));
}

void write_converted_file(const std::string& path, const ConvertedTrial& trial) {
    write_text_file(path, serialize_converted(trial));
}

ConvertedTrial parse_converted_file(const std::string& path) {
    return parse_converted(read_text_file(path), path);
}

ColumnsFile read_columns_file(const std::string& path) {
    return read_columns(read_text_file(path), path);
}

void write_columns_file(const std::string& path, const ColumnsFile& f) {
    write_text_file(path, serialize_columns(f));
}

}  // namespace pushrec
