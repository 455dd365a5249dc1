#include "uavris/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "uavris/errors.hpp"

namespace uavris {

namespace {

std::string trim(const std::string& s) {
    auto l = s.find_first_not_of(" \t\r");
    if (l == std::string::npos) return "";
    auto r = s.find_last_not_of(" \t\r");
    return s.substr(l, r - l + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
    }
}

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
    std::string norm = text;
    for (char& c : norm)
        if (c == ',') c = ' ';
    std::istringstream iss(norm);
    std::vector<double> out;
    std::string tok;
    while (iss >> tok) out.push_back(parse_double(tok, key));
    return out;
}

} // namespace

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

KvFile KvFile::parse_string(const std::string& text, const std::string& origin) {
    KvFile f;
    f.origin_ = origin;
    std::istringstream iss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(iss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (f.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        f.values_[key] = value;
    }
    return f;
}

bool KvFile::has(const std::string& key) const { return values_.count(key) != 0; }

std::string KvFile::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
}

double KvFile::get_double(const std::string& key) const { return parse_double(raw(key), key); }

double KvFile::get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

int KvFile::get_int(const std::string& key) const {
    double v = get_double(key);
    auto i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "': expected integer, got '" + std::to_string(v) + "'");
    return static_cast<int>(i);
}

int KvFile::get_int_or(const std::string& key, int fallback) {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t KvFile::get_u64_or(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    std::string text = raw(key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as unsigned integer");
    return v;
}

std::string KvFile::get_string(const std::string& key) const { return raw(key); }

std::string KvFile::get_string_or(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
}

Vec3 KvFile::get_vec3(const std::string& key) const {
    auto nums = parse_numbers(raw(key), key);
    if (nums.size() != 3)
        throw ConfigError("key '" + key + "': expected 3 numbers, got " + std::to_string(nums.size()));
    return {nums[0], nums[1], nums[2]};
}

Vec3 KvFile::get_vec3_or(const std::string& key, const Vec3& fallback) {
    return has(key) ? get_vec3(key) : fallback;
}

std::vector<Vec3> KvFile::get_vec3_list(const std::string& key) const {
    std::vector<Vec3> out;
    for (const std::string& part : split(raw(key), ';')) {
        std::string p = trim(part);
        if (p.empty()) continue;
        auto nums = parse_numbers(p, key);
        if (nums.size() != 3)
            throw ConfigError("key '" + key + "': entry '" + p + "' is not a 3-vector");
        out.push_back({nums[0], nums[1], nums[2]});
    }
    return out;
}

std::vector<double> KvFile::get_double_list(const std::string& key) const {
    return parse_numbers(raw(key), key);
}

std::vector<double> KvFile::get_double_list_or(const std::string& key, const std::vector<double>& fallback) {
    return has(key) ? get_double_list(key) : fallback;
}

std::vector<std::string> KvFile::get_string_list(const std::string& key) const {
    std::vector<std::string> out;
    std::string norm = raw(key);
    for (const std::string& part : split(norm, ',')) {
        std::string p = trim(part);
        if (!p.empty()) out.push_back(p);
    }
    return out;
}

std::vector<std::string> KvFile::get_string_list_or(const std::string& key,
                                                    const std::vector<std::string>& fallback) {
    return has(key) ? get_string_list(key) : fallback;
}

std::vector<std::string> KvFile::unconsumed() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!consumed_.count(k)) out.push_back(k);
    return out;
}

} // namespace uavris
