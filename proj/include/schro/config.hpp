#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace schro {

// Flat dotted-key configuration: `section.key = value` lines, `#` comments,
// comma-separated lists. One file fully determines a run; hash() is the
// reproducibility fingerprint recorded in every manifest.
class Config {
  public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    uint64_t get_uint(const std::string& key, uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;
    std::vector<int> get_int_list(const std::string& key,
                                  const std::vector<int>& fallback) const;

    // canonical form: sorted keys, one `key = value` per line
    std::string serialize() const;
    uint64_t hash() const;  // FNV-1a over serialize()

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

uint64_t fnv1a(const std::string& bytes);

}  // namespace schro
