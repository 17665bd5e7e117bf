#include "ajdn/config.hpp"

#include "ajdn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ajdn {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drops a trailing # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') {
            quoted = !quoted;
        } else if (line[k] == '#' && !quoted) {
            return line.substr(0, k);
        }
    }
    return line;
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

[[noreturn]] void bad_value(const std::string& key, const std::string& raw, const char* want) {
    fail(ErrorKind::Config, "config key '" + key + "': expected " + want + ", got '" + raw + "'");
}

std::optional<double> to_double(const std::string& s) {
    const auto t = trim(s);
    if (t.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    if (*first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        return std::nullopt;
    }
    return v;
}

} // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto where = origin + ", line " + std::to_string(lineno);
        const auto body = trim(strip_comment(line));
        if (body.empty()) {
            continue;
        }
        if (body.front() == '[') {
            if (body.back() != ']') {
                fail(ErrorKind::Config, where + ": unterminated section header");
            }
            section = trim(body.substr(1, body.size() - 2));
            if (!valid_name(section)) {
                fail(ErrorKind::Config, where + ": invalid section name '" + section + "'");
            }
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            fail(ErrorKind::Config, where + ": expected 'key = value'");
        }
        const auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (!valid_name(key)) {
            fail(ErrorKind::Config, where + ": invalid key '" + key + "'");
        }
        if (value.empty()) {
            fail(ErrorKind::Config, where + ": missing value for '" + key + "'");
        }
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                fail(ErrorKind::Config, where + ": unterminated string");
            }
            value = value.substr(1, value.size() - 2);
        } else if (value.front() == '[' && value.back() != ']') {
            fail(ErrorKind::Config, where + ": unterminated list");
        }
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Config, "cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::vector<std::string> ConfigFile::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& kv : values_) {
        out.push_back(kv.first);
    }
    return out;
}

void ConfigFile::set(const std::string& key, const std::string& raw) { values_[key] = raw; }

void ConfigFile::merge(const ConfigFile& other) {
    for (const auto& [k, v] : other.values_) {
        values_[k] = v;
    }
}

std::optional<std::string> ConfigFile::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    const auto v = to_double(*raw);
    if (!v) {
        bad_value(key, *raw, "a number");
    }
    return v;
}

std::optional<long long> ConfigFile::get_int(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    long long v = 0;
    const auto t = trim(*raw);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        bad_value(key, *raw, "an integer");
    }
    return v;
}

std::optional<std::uint64_t> ConfigFile::get_uint64(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    const auto t = trim(*raw);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        bad_value(key, *raw, "a nonnegative integer");
    }
    return v;
}

std::optional<bool> ConfigFile::get_bool(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    const auto t = trim(*raw);
    if (t == "true" || t == "1") {
        return true;
    }
    if (t == "false" || t == "0") {
        return false;
    }
    bad_value(key, *raw, "true or false");
}

std::optional<std::vector<double>> ConfigFile::get_double_list(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    auto t = trim(*raw);
    if (t.empty() || t.front() != '[') {
        // A scalar is a one-element list.
        const auto v = to_double(t);
        if (!v) {
            bad_value(key, *raw, "a number or a list of numbers");
        }
        return std::vector<double>{*v};
    }
    t = t.substr(1, t.size() - 2);
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) {
            continue;
        }
        const auto v = to_double(item);
        if (!v) {
            bad_value(key, *raw, "a list of numbers");
        }
        out.push_back(*v);
    }
    return out;
}

void ConfigFile::reject_unknown(const std::vector<std::string>& allowed) const {
    std::vector<std::string> unknown;
    for (const auto& [k, v] : values_) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            unknown.push_back(k);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config key";
        msg += unknown.size() > 1 ? "s: " : ": ";
        for (std::size_t k = 0; k < unknown.size(); ++k) {
            msg += (k ? ", " : "") + unknown[k];
        }
        fail(ErrorKind::Config, msg);
    }
}

std::string ConfigFile::to_string() const {
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
    for (const auto& [k, v] : values_) {
        const auto dot = k.find('.');
        const auto sec = dot == std::string::npos ? std::string{} : k.substr(0, dot);
        const auto name = dot == std::string::npos ? k : k.substr(dot + 1);
        sections[sec].emplace_back(name, v);
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [sec, entries] : sections) {
        if (!sec.empty()) {
            out << (first ? "" : "\n") << "[" << sec << "]\n";
        }
        first = false;
        for (const auto& [name, v] : entries) {
            const bool bare = to_double(v).has_value() || v == "true" || v == "false" || (!v.empty() && v.front() == '[');
            out << name << " = " << (bare ? v : "\"" + v + "\"") << "\n";
        }
    }
    return out.str();
}

} // namespace ajdn
