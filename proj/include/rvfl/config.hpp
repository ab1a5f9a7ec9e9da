#ifndef RVFL_CONFIG_HPP
#define RVFL_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rvfl {

// Flat key = value configuration (TOML-style scalars and comma lists).
// Unknown keys are kept; typed getters validate on access.
class Config {
  public:
    static Config from_string(const std::string& text);
    static Config from_file(const std::string& path);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<long> get_int_list(const std::string& key,
                                   const std::vector<long>& fallback) const;

    // sorted key=value lines; the manifest hashes this form
    std::string canonical() const;

  private:
    std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a_64(const std::string& text);

} // namespace rvfl

#endif
