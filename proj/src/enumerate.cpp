#include "gaifman/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gaifman {

namespace {

// Slot list: every potential tuple of every relation, in a fixed order.
struct SlotSpace {
    std::vector<std::pair<int, Tuple>> slots;

    static SlotSpace build(const Signature& sig, int n, bool graph_mode) {
        SlotSpace out;
        for (int r = 0; r < sig.size(); ++r) {
            int arity = sig.arity(r);
            if (graph_mode && arity == 2) {
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) out.slots.push_back({r, {a, b}});
                continue;
            }
            Tuple t(static_cast<std::size_t>(arity), 0);
            if (n == 0) continue;
            while (true) {
                out.slots.push_back({r, t});
                int pos = arity - 1;
                while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n - 1) {
                    t[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++t[static_cast<std::size_t>(pos)];
            }
        }
        return out;
    }
};

Structure realize(const Signature& sig, int n, const SlotSpace& space, std::uint64_t mask,
                  bool graph_mode) {
    Structure s(sig, n);
    for (std::size_t i = 0; i < space.slots.size(); ++i) {
        if (!((mask >> i) & 1)) continue;
        const auto& [r, t] = space.slots[i];
        s.add(r, t);
        if (graph_mode && t.size() == 2) s.add(r, {t[1], t[0]});
    }
    return s;
}

// Canonical encoding: minimum over permutations of the slot bitmask.
std::uint64_t apply_perm(const SlotSpace& space, const std::map<std::pair<int, Tuple>, std::size_t>& index,
                         std::uint64_t mask, const std::vector<int>& perm, bool graph_mode) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < space.slots.size(); ++i) {
        if (!((mask >> i) & 1)) continue;
        auto [r, t] = space.slots[i];
        for (int& e : t) e = perm[static_cast<std::size_t>(e)];
        if (graph_mode && t.size() == 2 && t[0] > t[1]) std::swap(t[0], t[1]);
        out |= 1ull << index.at({r, t});
    }
    return out;
}

}  // namespace

std::vector<Structure> enumerate_structures(const Signature& sig, int max_size,
                                            const EnumOptions& opts) {
    std::vector<Structure> out;
    for (int n = 0; n <= max_size; ++n) {
        SlotSpace space = SlotSpace::build(sig, n, opts.graph_mode);
        if (static_cast<int>(space.slots.size()) > opts.bit_cap)
            throw std::invalid_argument("enumerate_structures: size " + std::to_string(n) +
                                        " needs " + std::to_string(space.slots.size()) +
                                        " table bits, cap is " + std::to_string(opts.bit_cap));
        std::map<std::pair<int, Tuple>, std::size_t> index;
        for (std::size_t i = 0; i < space.slots.size(); ++i) index[space.slots[i]] = i;

        std::vector<std::vector<int>> perms;
        if (opts.up_to_iso) {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            do {
                perms.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }

        std::set<std::uint64_t> canonical;
        std::uint64_t total = space.slots.empty() ? 1 : (1ull << space.slots.size());
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (opts.up_to_iso) {
                std::uint64_t canon = mask;
                for (const auto& perm : perms)
                    canon = std::min(canon, apply_perm(space, index, mask, perm, opts.graph_mode));
                canonical.insert(canon);
            } else {
                canonical.insert(mask);
            }
        }
        for (std::uint64_t mask : canonical)
            out.push_back(realize(sig, n, space, mask, opts.graph_mode));
    }
    return out;
}

std::vector<Structure> enumerate_graphs(int max_size) {
    EnumOptions opts;
    opts.graph_mode = true;
    return enumerate_structures(Signature::graph(), max_size, opts);
}

std::uint64_t count_structures_burnside(const Signature& sig, int n, bool graph_mode) {
    SlotSpace space = SlotSpace::build(sig, n, graph_mode);
    std::map<std::pair<int, Tuple>, std::size_t> index;
    for (std::size_t i = 0; i < space.slots.size(); ++i) index[space.slots[i]] = i;

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t numerator = 0;
    std::uint64_t group = 0;
    do {
        ++group;
        // Count orbits of the slot action induced by perm.
        std::vector<bool> seen(space.slots.size(), false);
        std::uint64_t orbits = 0;
        for (std::size_t i = 0; i < space.slots.size(); ++i) {
            if (seen[i]) continue;
            ++orbits;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                auto [r, t] = space.slots[j];
                for (int& e : t) e = perm[static_cast<std::size_t>(e)];
                if (graph_mode && t.size() == 2 && t[0] > t[1]) std::swap(t[0], t[1]);
                j = index.at({r, t});
            }
        }
        numerator += 1ull << orbits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return numerator / group;
}

}  // namespace gaifman
