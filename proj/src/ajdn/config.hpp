#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ajdn {

// Flat key-value configuration in a small TOML subset:
//   # comment
//   [section]
//   key = 1.5 | 42 | true | "text" | [1, 2, 3]
// Keys are stored as "section.key". Malformed input raises a Config error
// naming the line.
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text, const std::string& origin = "<config>");
    static ConfigFile load(const std::string& path);

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    [[nodiscard]] std::vector<std::string> keys() const;

    // Overwrites or inserts. Used for command-line overrides.
    void set(const std::string& key, const std::string& raw);
    // Copies every key of `other` over this one.
    void merge(const ConfigFile& other);

    [[nodiscard]] std::optional<std::string> get_string(const std::string& key) const;
    [[nodiscard]] std::optional<double> get_double(const std::string& key) const;
    [[nodiscard]] std::optional<long long> get_int(const std::string& key) const;
    [[nodiscard]] std::optional<std::uint64_t> get_uint64(const std::string& key) const;
    [[nodiscard]] std::optional<bool> get_bool(const std::string& key) const;
    [[nodiscard]] std::optional<std::vector<double>> get_double_list(const std::string& key) const;

    // Config error listing keys outside `allowed`.
    void reject_unknown(const std::vector<std::string>& allowed) const;

    // Serialises back to the same subset, grouped by section, keys sorted.
    [[nodiscard]] std::string to_string() const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace ajdn
