#ifndef GAIFMAN_ACCEPT_EF_ORACLE_HPP
#define GAIFMAN_ACCEPT_EF_ORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "gaifman/structure.hpp"

namespace gaifman::accept {

// Independent Ehrenfeucht-Fraisse oracle for the type machinery: plays the
// q-round back-and-forth game on two anchored pointed neighborhoods. This
// deliberately avoids the canonical type trees of the main implementation;
// neighborhoods are extracted with a local BFS and positions compared by a
// direct partial-isomorphism check.
class EfOracle {
public:
    // Rank-q equivalence of (N_r(a-tuple) in s1, tuple) vs the same in s2.
    static bool equivalent(const Structure& s1, const Tuple& t1, const Structure& s2,
                           const Tuple& t2, int radius, int rank);

    // The set of EF classes realized by the k-tuples of `s`, as indices into
    // a caller-maintained universe of representatives.
    struct Universe {
        struct Entry {
            Structure ball;
            Tuple tuple;
        };
        std::vector<Entry> reps;  // one per class
        std::vector<std::string> rep_buckets;
        int radius = 0, rank = 0;
        std::map<std::string, int> memo;  // canonical pointed balls seen before

        int classify(const Structure& s, const Tuple& t);
    };
};

// Realized EF-class sets per structure; two structures compare exactly like
// the specter preorder is supposed to.
std::vector<int> ef_class_set(EfOracle::Universe& universe, const Structure& s, int k);

}  // namespace gaifman::accept

#endif
