#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weyl/bit_tuple.hpp"
#include "weyl/weyl_transform.hpp"

namespace weyl {

// A spatial symmetry expressed on coefficient indices: conjugating D(a,b)
// by the underlying permutation of pixel positions sends it to
// sign * D(a_perm[a], b_perm[b]). For every map in this family the sign
// cocycle depends only on b, so it is stored as a b-indexed table; the
// accessor keeps the general (a,b) signature.
struct IndexMap {
    std::string name;
    int m = 0;
    std::vector<std::uint32_t> a_perm;
    std::vector<std::uint32_t> b_perm;
    std::vector<std::int8_t> sign_by_b;

    std::uint32_t map_a(std::uint32_t a) const { return a_perm[a]; }
    std::uint32_t map_b(std::uint32_t b) const { return b_perm[b]; }
    int sign(std::uint32_t a, std::uint32_t b) const {
        (void)a;
        return sign_by_b[b];
    }
};

// 90-degree clockwise rotation of the vectorized sqrt-by-sqrt tile:
// both halves of a and of b swap, and the sign counts the bits of the
// leading half of b. Requires even m.
IndexMap rot90_map(int m);

// Cyclic vertical translation of the tile by a quarter of its side. Acts
// on the top two bits of the trailing (row) halves:
// a bit m-1 gains bit m-2, b bit m-2 gains bit m-1 (m here the half
// width), sign from b bit m-2. Requires m = 2r with r >= 2.
IndexMap vtrans_map(int m);

// Horizontal quarter translation, built as rot90 . vtrans . rot90. The
// composite permutation equals the plain horizontal shift combined with a
// 180-degree rotation, which is itself a group element; the index action
// is identical, only the sign cocycle carries the extra twist.
IndexMap htrans_map(int m);

// Conjugate by `first`'s permutation, then by `then`'s.
IndexMap compose(const IndexMap& first, const IndexMap& then, const std::string& name);

// Underlying pixel-position permutations, as tables perm[v] = image of v
// under the spatial move (column-vectorized tiles, leading index bits =
// column). Used by the dense conjugation checks.
std::vector<std::uint32_t> rotation_permutation(int m);
std::vector<std::uint32_t> vshift_permutation(int m);

// The standard generator set {rot90, vtrans, htrans}; m = 2r, r >= 2.
std::vector<IndexMap> symmetry_generators(int m);

// Orbit partition of coefficient indices under a set of index maps. The
// a and b coordinates are partitioned independently and crossed, matching
// the coarser product structure the descriptor averages over (each
// product class is a union of joint orbits, so invariance is preserved).
struct ClassPartition {
    int m = 0;
    // Sorted members; classes ordered by their minimal member.
    std::vector<std::vector<std::uint32_t>> a_classes;
    std::vector<std::vector<std::uint32_t>> b_classes;
    // Product classes in canonical order (ascending minimal flat index),
    // members as flat (a << m) | b values, sorted.
    std::vector<std::vector<std::uint64_t>> classes;
    // A product class is dropped when every member is structurally zero
    // or when its members all have a = 0.
    std::vector<bool> retained;
    std::vector<std::int32_t> class_of_flat;  // flat index -> class id
    std::uint64_t partition_id = 0;           // content hash

    std::size_t retained_count() const;
    std::int32_t class_of(std::uint32_t a, std::uint32_t b) const {
        return class_of_flat[(std::uint64_t{a} << m) | b];
    }
};

ClassPartition build_partition(int m, const std::vector<IndexMap>& generators);

// build_partition with the standard generators.
ClassPartition default_partition(int m);

// Class-averaged coefficient magnitudes, one value per retained class in
// canonical class order.
struct Descriptor {
    std::vector<double> values;
    std::uint64_t partition_id = 0;
};

// Mean of |coefficient| over each retained class. Members at structurally
// zero positions are excluded from the average by default; including them
// only rescales mixed classes by a constant factor but dilutes them, so
// the flag exists for comparison runs.
Descriptor pooled_descriptor(const WeylSpectrum& s, const ClassPartition& p,
                             bool include_structural_zeros = false);

// Descriptor of a square tile whose side is a multiple of 4 (16x16 in the
// usual pipeline): the tile is cut into 4x4 subtiles, each vectorized
// columnwise and transformed, and the per-subtile descriptors are
// averaged. `patch` is row-major; the partition must be the 4-bit one.
Descriptor patch_descriptor(std::span<const double> patch, const ClassPartition& p,
                            bool include_structural_zeros = false);

// JSON export of the partition for the CLI and for golden tests.
std::string partition_to_json(const ClassPartition& p);

}  // namespace weyl
