#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uavris/linalg.hpp"

namespace uavris {

// Line-oriented `key = value` file with `#` comments. Values keep their raw
// text; typed accessors parse on demand and raise ConfigError with the key
// name on failure.
class KvFile {
public:
    static KvFile parse_file(const std::string& path);
    static KvFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback);
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback);
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback);
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback);

    // "1 2 3" or "1, 2, 3"
    Vec3 get_vec3(const std::string& key) const;
    Vec3 get_vec3_or(const std::string& key, const Vec3& fallback);
    // entries separated by ';'
    std::vector<Vec3> get_vec3_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<double> get_double_list_or(const std::string& key, const std::vector<double>& fallback);
    std::vector<std::string> get_string_list(const std::string& key) const;
    std::vector<std::string> get_string_list_or(const std::string& key, const std::vector<std::string>& fallback);

    // Keys present in the file but never read by any accessor; used to reject
    // typos after a load routine has consumed everything it understands.
    std::vector<std::string> unconsumed() const;
    const std::string& origin() const { return origin_; }

private:
    std::string raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
    std::string origin_;
};

} // namespace uavris
