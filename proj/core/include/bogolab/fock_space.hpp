#ifndef BOGOLAB_FOCK_SPACE_HPP
#define BOGOLAB_FOCK_SPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bogolab/regime.hpp"

namespace bogolab {

enum class ModeTag : std::uint8_t { Condensate, Low, Shell, High };

struct FockMode {
    Mode label{};   // abstract integer momentum 3-vector
    ModeTag tag = ModeTag::Low;
    int cap = 1;    // max occupation of this mode
};

using Occupation = std::vector<std::uint8_t>;

// Truncated occupation-number space over a labeled mode set: every
// occupation vector within the per-mode caps and the total cap, enumerated
// exactly once in lexicographic order.
class FockSpace {
public:
    FockSpace(std::vector<FockMode> modes, int total_cap);

    std::size_t dim() const { return basis_.size(); }
    int n_modes() const { return int(modes_.size()); }
    int total_cap() const { return total_cap_; }
    const FockMode& mode(int i) const { return modes_.at(std::size_t(i)); }
    const std::vector<FockMode>& modes() const { return modes_; }

    const Occupation& occupation(std::size_t basis_index) const {
        return basis_[basis_index];
    }
    // basis position of an occupation vector, or nullopt outside the caps
    std::optional<std::size_t> index_of(const Occupation& occ) const;

    std::optional<int> find_mode(const Mode& label) const;
    std::vector<int> modes_with_tag(ModeTag tag) const;
    std::optional<int> condensate() const;

    // r in H with r+k in H and -r in H, all within the mode set; the range of
    // the cubic generator for shell momentum k.
    std::vector<int> connection_range(int k_mode) const;

private:
    std::vector<FockMode> modes_;
    int total_cap_;
    std::vector<Occupation> basis_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, int> label_index_;
    static std::string key(const Occupation& occ);
    static std::string label_key(const Mode& m);
};

// Layouts for the operator-algebra checks. Dimensions stay below 2e4.
struct ToyLayout {
    std::vector<FockMode> modes;
    int total_cap = 8;
    std::string name;
};

// 1 condensate (cap 12) + shell {+-k} (cap 4) + 4 high (cap 2), total cap 8.
ToyLayout default_toy_layout();
// Two shell modes only; for the quadratic-diagonalization identity.
ToyLayout shell_pair_layout(int cap = 24);
// 1 shell + 4 high modes; small enough for dense matrix-exponential oracles.
ToyLayout five_mode_layout();
// Shell {+-k, +-2k} with a high set rich enough that the parity-vanishing
// cubic and quartic observables are nonzero matrices.
ToyLayout rich_shell_layout();
// Seeded random layout: random shell direction, random inversion-symmetric
// connection family, random caps.
ToyLayout random_layout(std::uint64_t seed);

// Synthetic short-range profile phi(r) = -amp/|r|^2 on integer labels.
std::function<double(const Mode&)> synthetic_phi(double amp);

}  // namespace bogolab

#endif
