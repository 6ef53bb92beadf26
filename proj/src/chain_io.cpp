#include "pushrec/chain_io.hpp"

#include <charconv>
#include <map>

namespace pushrec {

LinkChain<double> default_chain(const SubjectMeta& meta, double gravity) {
    meta.validate();
    const double h = meta.height_m, w = meta.weight_kg;
    // two legs move together in the sagittal plane, so shank/thigh carry
    // twice the single-segment mass; foot mass stays with the ground
    struct Row {
        double mass_frac, len_frac, com_frac, gyr_frac;
    };
    const Row rows[3] = {
        {2 * 0.0465, 0.246, 0.567, 0.302},  // shank, measured from the ankle
        {2 * 0.1000, 0.245, 0.567, 0.323},  // thigh, from the knee
        {0.6780, 0.288, 0.626, 0.496},      // head-arms-trunk, from the hip
    };
    LinkChain<double> chain;
    chain.gravity = gravity;
    for (const Row& r : rows) {
        LinkParams<double> link;
        link.mass = r.mass_frac * w;
        link.length = r.len_frac * h;
        link.com_offset = r.com_frac * link.length;
        link.inertia = link.mass * std::pow(r.gyr_frac * link.length, 2);
        chain.links.push_back(link);
    }
    chain.validate();
    return chain;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_value(const std::string& tok, const std::string& name, int line,
                   const std::string& key) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(name, line, key, "not a number: '" + tok + "'");
    return v;
}

}  // namespace

LinkChain<double> parse_chain(const std::string& text, const std::string& name) {
    std::map<int, LinkParams<double>> links;
    std::map<int, int> fields_seen;
    double gravity = 9.8;

    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(name, lineno, "line", "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "gravity") {
            gravity = parse_value(val, name, lineno, key);
            continue;
        }
        if (key.rfind("link.", 0) != 0)
            throw ParseError(name, lineno, key, "unknown key");
        const auto dot2 = key.find('.', 5);
        if (dot2 == std::string::npos)
            throw ParseError(name, lineno, key, "expected link.<i>.<field>");
        int idx = 0;
        const std::string idx_str = key.substr(5, dot2 - 5);
        auto [p, ec] = std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), idx);
        if (ec != std::errc{} || p != idx_str.data() + idx_str.size() || idx < 1)
            throw ParseError(name, lineno, key, "bad link index '" + idx_str + "'");
        const std::string field = key.substr(dot2 + 1);
        const double v = parse_value(val, name, lineno, key);

        LinkParams<double>& link = links[idx];
        if (field == "mass") link.mass = v;
        else if (field == "length") link.length = v;
        else if (field == "com_offset") link.com_offset = v;
        else if (field == "inertia") link.inertia = v;
        else throw ParseError(name, lineno, key, "unknown link field '" + field + "'");
        fields_seen[idx] |= (field == "mass") ? 1 : (field == "length") ? 2
                            : (field == "com_offset") ? 4 : 8;
    }

    if (links.empty()) throw ParseError(name, lineno, "file", "no links defined");
    LinkChain<double> chain;
    chain.gravity = gravity;
    for (int i = 1; i <= static_cast<int>(links.size()); ++i) {
        const auto it = links.find(i);
        if (it == links.end())
            throw ParseError(name, lineno, "link." + std::to_string(i),
                             "link indices must be contiguous from 1");
        if (fields_seen[i] != 15)
            throw ParseError(name, lineno, "link." + std::to_string(i),
                             "missing mass/length/com_offset/inertia");
        chain.links.push_back(it->second);
    }
    chain.validate();
    return chain;
}

std::string serialize_chain(const LinkChain<double>& chain) {
    std::string out = "gravity = " + format_double(chain.gravity) + "\n";
    for (size_t i = 0; i < chain.links.size(); ++i) {
        const std::string p = "link." + std::to_string(i + 1) + ".";
        out += p + "mass = " + format_double(chain.links[i].mass) + "\n";
        out += p + "length = " + format_double(chain.links[i].length) + "\n";
        out += p + "com_offset = " + format_double(chain.links[i].com_offset) + "\n";
        out += p + "inertia = " + format_double(chain.links[i].inertia) + "\n";
    }
    return out;
}

LinkChain<double> parse_chain_file(const std::string& path) {
    return parse_chain(read_text_file(path), path);
}

void write_chain_file(const std::string& path, const LinkChain<double>& chain) {
    write_text_file(path, serialize_chain(chain));
}

ColumnsFile trajectory_to_columns(const JointTrajectory<double>& traj) {
    const Eigen::Index n = traj.theta.cols();
    ColumnsFile f;
    f.header.push_back("t");
    for (Eigen::Index j = 0; j < n; ++j) f.header.push_back("theta_" + std::to_string(j + 1));
    for (Eigen::Index j = 0; j < n; ++j)
        f.header.push_back("thetadot_" + std::to_string(j + 1));
    for (Eigen::Index j = 0; j < n; ++j) f.header.push_back("tau_" + std::to_string(j + 1));
    f.data.resize(traj.t.size(), 1 + 3 * n);
    f.data.col(0) = traj.t;
    f.data.middleCols(1, n) = traj.theta;
    f.data.middleCols(1 + n, n) = traj.theta_dot;
    f.data.middleCols(1 + 2 * n, n) = traj.tau;
    return f;
}

}  // namespace pushrec
