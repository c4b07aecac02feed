#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace waveshell {

/// Flat key=value configuration with bracketed section headers. Sections and
/// keys are validated against the schema below; unknown names are rejected
/// with the offending name in the message, so typos fail fast.
///
/// Sections and their keys:
///   [geometry]   m, n, period, grid
///   [data]       kind, c_star, width, ball_center, ball_radius, strip_dir,
///                strip_halfwidth, envelope_sigma, distribution, seed
///   [time]       t0, t1, nt
///   [experiment] p, q, r, N_list, trials, statistic
///   [measure]    c_star, T_list, mc_samples, slice_resolution, trials, seed
///   [weyl]       K_list, d, p
///   [output]     out_dir
///   [run]        manifest metadata; parsed and ignored, so a manifest can be
///                fed back through --config unchanged.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);
    void set_double(const std::string& section, const std::string& key, double value);
    void set_int(const std::string& section, const std::string& key, long long value);
    void set_u64(const std::string& section, const std::string& key, std::uint64_t value);
    void set_list(const std::string& section, const std::string& key,
                  const std::vector<double>& values);

    /// Overlay every entry of `other` on top of this config.
    void merge(const Config& other);

    /// Render back to the key=value format, sections in schema order.
    std::string serialize() const;

private:
    static void check_schema(const std::string& section, const std::string& key,
                             const std::string& origin);
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace waveshell
