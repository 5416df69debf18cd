#ifndef FLOWBAND_KV_HPP
#define FLOWBAND_KV_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace flowband {

/// Parsed "key = value" configuration text: UTF-8 lines, '#' starts a
/// comment, blank lines ignored. Keys keep file order; duplicate keys are
/// rejected.
class KvFile {
public:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    static KvFile parse_text(const std::string& text);
    static KvFile parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;

    std::string require(const std::string& key) const;
    std::int64_t require_int(const std::string& key) const;
    double require_double(const std::string& key) const;

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    /// "a b" pair of reals.
    std::pair<double, double> require_pair(const std::string& key) const;

    const std::vector<Entry>& entries() const { return entries_; }

    /// Keys of the form prefix.N.suffix; returns the sorted distinct N's.
    std::vector<int> numbered_groups(const std::string& prefix) const;

private:
    std::vector<Entry> entries_;
};

} // namespace flowband

#endif
