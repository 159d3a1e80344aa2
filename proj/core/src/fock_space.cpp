#include "bogolab/fock_space.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bogolab {

std::string FockSpace::key(const Occupation& occ) {
    return std::string(reinterpret_cast<const char*>(occ.data()), occ.size());
}

std::string FockSpace::label_key(const Mode& m) {
    return std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]);
}

FockSpace::FockSpace(std::vector<FockMode> modes, int total_cap)
    : modes_(std::move(modes)), total_cap_(total_cap) {
    if (modes_.empty()) throw std::invalid_argument("FockSpace: need at least one mode");
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].cap < 0 || modes_[i].cap > 255)
            throw std::invalid_argument("FockSpace: per-mode cap out of range");
        if (!label_index_.emplace(label_key(modes_[i].label), int(i)).second)
            throw std::invalid_argument("FockSpace: duplicate mode label");
    }
    Occupation occ(modes_.size(), 0);
    // lexicographic enumeration over modes in order
    std::function<void(std::size_t, int)> recurse = [&](std::size_t m, int used) {
        if (m == modes_.size()) {
            index_.emplace(key(occ), basis_.size());
            basis_.push_back(occ);
            return;
        }
        const int top = std::min(modes_[m].cap, total_cap_ - used);
        for (int n = 0; n <= top; ++n) {
            occ[m] = std::uint8_t(n);
            recurse(m + 1, used + n);
        }
        occ[m] = 0;
    };
    recurse(0, 0);
}

std::optional<std::size_t> FockSpace::index_of(const Occupation& occ) const {
    auto it = index_.find(key(occ));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FockSpace::find_mode(const Mode& label) const {
    auto it = label_index_.find(label_key(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> FockSpace::modes_with_tag(ModeTag tag) const {
    std::vector<int> out;
    for (int i = 0; i < n_modes(); ++i)
        if (modes_[std::size_t(i)].tag == tag) out.push_back(i);
    return out;
}

std::optional<int> FockSpace::condensate() const {
    for (int i = 0; i < n_modes(); ++i)
        if (modes_[std::size_t(i)].tag == ModeTag::Condensate) return i;
    return std::nullopt;
}

std::vector<int> FockSpace::connection_range(int k_mode) const {
    const Mode k = mode(k_mode).label;
    if (mode(k_mode).tag != ModeTag::Shell)
        throw std::invalid_argument("connection_range: k must be shell-tagged");
    std::vector<int> out;
    for (int i = 0; i < n_modes(); ++i) {
        if (modes_[std::size_t(i)].tag != ModeTag::High) continue;
        const Mode r = modes_[std::size_t(i)].label;
        const Mode rk{r[0] + k[0], r[1] + k[1], r[2] + k[2]};
        const Mode mr{-r[0], -r[1], -r[2]};
        const auto irk = find_mode(rk);
        const auto imr = find_mode(mr);
        if (!irk || !imr) continue;
        if (mode(*irk).tag != ModeTag::High || mode(*imr).tag != ModeTag::High) continue;
        out.push_back(i);
    }
    return out;
}

ToyLayout default_toy_layout() {
    ToyLayout l;
    l.name = "default";
    l.total_cap = 8;
    l.modes = {
        {{0, 0, 0}, ModeTag::Condensate, 12},
        {{0, 0, 1}, ModeTag::Shell, 4},
        {{0, 0, -1}, ModeTag::Shell, 4},
        {{3, 0, 0}, ModeTag::High, 2},
        {{-3, 0, 0}, ModeTag::High, 2},
        {{3, 0, 1}, ModeTag::High, 2},
        {{-3, 0, -1}, ModeTag::High, 2},
    };
    return l;
}

ToyLayout shell_pair_layout(int cap) {
    ToyLayout l;
    l.name = "shell-pair";
    l.total_cap = 2 * cap;
    l.modes = {
        {{0, 0, 1}, ModeTag::Shell, cap},
        {{0, 0, -1}, ModeTag::Shell, cap},
    };
    return l;
}

ToyLayout five_mode_layout() {
    ToyLayout l;
    l.name = "five-mode";
    l.total_cap = 8;
    l.modes = {
        {{0, 0, 1}, ModeTag::Shell, 4},
        {{3, 0, 0}, ModeTag::High, 2},
        {{-3, 0, 0}, ModeTag::High, 2},
        {{3, 0, 1}, ModeTag::High, 2},
        {{-3, 0, -1}, ModeTag::High, 2},
    };
    return l;
}

ToyLayout rich_shell_layout() {
    ToyLayout l;
    l.name = "rich-shell";
    l.total_cap = 7;
    l.modes = {
        {{0, 0, 1}, ModeTag::Shell, 3},
        {{0, 0, -1}, ModeTag::Shell, 3},
        {{0, 0, 2}, ModeTag::Shell, 3},
        {{0, 0, -2}, ModeTag::Shell, 3},
        {{3, 0, 0}, ModeTag::High, 2},
        {{-3, 0, 0}, ModeTag::High, 2},
        {{3, 0, 1}, ModeTag::High, 2},
        {{-3, 0, -1}, ModeTag::High, 2},
    };
    return l;
}

ToyLayout random_layout(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](int lo, int hi) {
        return int(lo + rng() % std::uint64_t(hi - lo + 1));
    };
    ToyLayout l;
    l.name = "random-" + std::to_string(seed);
    const int axis = pick(0, 2);
    Mode k{0, 0, 0};
    k[std::size_t(axis)] = 1;
    Mode mk{-k[0], -k[1], -k[2]};
    // base high vector away from the shell direction
    Mode h{0, 0, 0};
    h[std::size_t((axis + 1) % 3)] = pick(2, 4);
    h[std::size_t((axis + 2) % 3)] = pick(0, 1);
    Mode hk{h[0] + k[0], h[1] + k[1], h[2] + k[2]};
    Mode mh{-h[0], -h[1], -h[2]};
    Mode mhk{-hk[0], -hk[1], -hk[2]};
    const int shell_cap = pick(3, 4);
    l.total_cap = pick(6, 8);
    l.modes = {
        {k, ModeTag::Shell, shell_cap},   {mk, ModeTag::Shell, shell_cap},
        {h, ModeTag::High, 2},            {mh, ModeTag::High, 2},
        {hk, ModeTag::High, 2},           {mhk, ModeTag::High, 2},
    };
    if (pick(0, 1) == 1) l.modes.push_back({{0, 0, 0}, ModeTag::Condensate, pick(4, 8)});
    return l;
}

std::function<double(const Mode&)> synthetic_phi(double amp) {
    return [amp](const Mode& m) {
        const double n2 = double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
        if (n2 == 0.0) return 0.0;
        return -amp / n2;
    };
}

}  // namespace bogolab
