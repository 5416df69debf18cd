#include "flowband/kv.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flowband {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

KvFile KvFile::parse_text(const std::string& text) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        Entry entry;
        entry.key = trim(trimmed.substr(0, eq));
        entry.value = trim(trimmed.substr(eq + 1));
        entry.line = line_no;
        if (entry.key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(entry.key).second)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": duplicate key '" + entry.key + "'");
        kv.entries_.push_back(std::move(entry));
    }
    return kv;
}

KvFile KvFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_text(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

bool KvFile::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> KvFile::get(const std::string& key) const {
    for (const Entry& e : entries_)
        if (e.key == key) return e.value;
    return std::nullopt;
}

std::string KvFile::require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw std::invalid_argument("config: missing required key '" + key + "'");
    return *v;
}

std::int64_t KvFile::require_int(const std::string& key) const {
    const std::string v = require(key);
    std::size_t pos = 0;
    std::int64_t out;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an integer: '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not an integer: '" + v + "'");
    return out;
}

double KvFile::require_double(const std::string& key) const {
    const std::string v = require(key);
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not a number: '" + v + "'");
    return out;
}

std::int64_t KvFile::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? require_int(key) : fallback;
}

double KvFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? require_double(key) : fallback;
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
}

std::pair<double, double> KvFile::require_pair(const std::string& key) const {
    const std::string v = require(key);
    std::istringstream in(v);
    double a = 0.0, b = 0.0;
    if (!(in >> a >> b))
        throw std::invalid_argument("config: key '" + key + "' needs two numbers, got '" + v + "'");
    std::string rest;
    if (in >> rest)
        throw std::invalid_argument("config: key '" + key + "' has trailing content: '" + v + "'");
    return {a, b};
}

std::vector<int> KvFile::numbered_groups(const std::string& prefix) const {
    std::set<int> ids;
    const std::string want = prefix + ".";
    for (const Entry& e : entries_) {
        if (e.key.rfind(want, 0) != 0) continue;
        const auto rest = e.key.substr(want.size());
        const auto dot = rest.find('.');
        if (dot == std::string::npos) continue;
        const std::string num = rest.substr(0, dot);
        if (num.empty() || !std::all_of(num.begin(), num.end(),
                                        [](char c) { return c >= '0' && c <= '9'; }))
            continue;
        ids.insert(std::stoi(num));
    }
    return {ids.begin(), ids.end()};
}

} // namespace flowband
