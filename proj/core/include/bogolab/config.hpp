#ifndef BOGOLAB_CONFIG_HPP
#define BOGOLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bogolab {

// Flat key-value run configuration; every field has a default, flags
// override file entries, and serialization round-trips.
struct RunConfig {
    std::string command;  // scattering | free-energy | verify | fock-demo | localize
    std::string potential = "soft-sphere:V0=2,R=1";
    std::vector<double> rho = {1e-4};
    double gamma = 1.1;
    double epsilon = 0.08;
    std::vector<double> temp_ratio = {0.0, 0.5, 1.0};
    std::vector<double> N_ladder;  // overrides the rho-derived ladder when set
    double kappa = 0.52;           // used with N_ladder
    double cap_factor = 6.0;
    double tol = 1e-10;
    std::uint64_t seed = 7;
    std::string alpha_source = "full";  // full | box
    std::string out;
    double c_eps_c = 0.0;
    double c_eps_eps = 0.0;
    int threads = 1;
    std::string dump_ops;     // directory for sparse triplet dumps
    std::string dump_coeffs;  // directory for coefficient CSV tables

    std::string serialize() const;
    static RunConfig deserialize(const std::string& text);
    static RunConfig load_file(const std::string& path);
};

// shortest round-trip decimal representation (17 significant digits max)
std::string format_double(double v);
std::vector<double> parse_double_list(const std::string& csv);
std::string join_double_list(const std::vector<double>& v);

}  // namespace bogolab

#endif
