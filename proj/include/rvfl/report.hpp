#ifndef RVFL_REPORT_HPP
#define RVFL_REPORT_HPP

#include "rvfl/config.hpp"

#include <string>
#include <vector>

namespace rvfl {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Rows of full-precision cells; identical inputs produce identical bytes.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& cells);
    void add_row_mixed(const std::vector<std::string>& cells);
    std::string str() const;
    void save(const std::string& path) const;

    static std::string format_double(double v);

  private:
    std::size_t width_;
    std::string body_;
};

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct SvgOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 760;
    int height = 520;
};

// Self-contained SVG line plot (axes, decade ticks on log scales, legend);
// no plotting dependency.
std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options);
void save_svg(const std::vector<SvgSeries>& series, const SvgOptions& options,
              const std::string& path);

// Run manifest: command, config hash (FNV-1a over the canonical form),
// seed, library version, output list. Deliberately free of timestamps so
// identical runs produce identical manifests.
std::string make_manifest(const std::string& command, const Config& cfg, std::uint64_t seed,
                          const std::vector<std::string>& outputs);
void save_manifest(const std::string& command, const Config& cfg, std::uint64_t seed,
                   const std::vector<std::string>& outputs, const std::string& path);

} // namespace rvfl

#endif
