#include "bogolab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bogolab {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    std::istringstream is(csv);
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        std::size_t pos = 0;
        out.push_back(std::stod(token, &pos));
        if (pos != token.size())
            throw std::invalid_argument("cannot parse number '" + token + "'");
    }
    return out;
}

std::string join_double_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << "command = " << command << '\n';
    os << "potential = " << potential << '\n';
    os << "rho = " << join_double_list(rho) << '\n';
    os << "gamma = " << format_double(gamma) << '\n';
    os << "epsilon = " << format_double(epsilon) << '\n';
    os << "temp-ratio = " << join_double_list(temp_ratio) << '\n';
    os << "N = " << join_double_list(N_ladder) << '\n';
    os << "kappa = " << format_double(kappa) << '\n';
    os << "cap-factor = " << format_double(cap_factor) << '\n';
    os << "tol = " << format_double(tol) << '\n';
    os << "seed = " << seed << '\n';
    os << "alpha-source = " << alpha_source << '\n';
    os << "out = " << out << '\n';
    os << "c-eps = " << format_double(c_eps_c) << ',' << format_double(c_eps_eps) << '\n';
    os << "threads = " << threads << '\n';
    os << "dump-ops = " << dump_ops << '\n';
    os << "dump-coeffs = " << dump_coeffs << '\n';
    return os.str();
}

RunConfig RunConfig::deserialize(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "command") cfg.command = val;
        else if (key == "potential") cfg.potential = val;
        else if (key == "rho") cfg.rho = parse_double_list(val);
        else if (key == "gamma") cfg.gamma = std::stod(val);
        else if (key == "epsilon") cfg.epsilon = std::stod(val);
        else if (key == "temp-ratio") cfg.temp_ratio = parse_double_list(val);
        else if (key == "N") cfg.N_ladder = parse_double_list(val);
        else if (key == "kappa") cfg.kappa = std::stod(val);
        else if (key == "cap-factor") cfg.cap_factor = std::stod(val);
        else if (key == "tol") cfg.tol = std::stod(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "alpha-source") cfg.alpha_source = val;
        else if (key == "out") cfg.out = val;
        else if (key == "c-eps") {
            const auto parts = parse_double_list(val);
            cfg.c_eps_c = parts.size() > 0 ? parts[0] : 0.0;
            cfg.c_eps_eps = parts.size() > 1 ? parts[1] : 0.0;
        } else if (key == "threads") cfg.threads = std::stoi(val);
        else if (key == "dump-ops") cfg.dump_ops = val;
        else if (key == "dump-coeffs") cfg.dump_coeffs = val;
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return deserialize(os.str());
}

}  // namespace bogolab
