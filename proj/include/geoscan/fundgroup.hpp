#ifndef GEOSCAN_FUNDGROUP_HPP_
#define GEOSCAN_FUNDGROUP_HPP_

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoscan/normalsurface.hpp"
#include "geoscan/triangulation.hpp"

namespace geoscan {

/// Signed generator indices: +k is a_k, -k its inverse. Never contains 0.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
/// Free reduction followed by cancelling inverse letters across the ends.
Word cyclic_reduce(const Word& w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

/// Letters a..z for generators 1..26, uppercase or a trailing "^-1" for inverses.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

struct GroupPresentation {
    int num_generators = 0;
    std::vector<Word> relators;
};

/// Leaving `node` through `slot` (a face of a tetrahedron or of a disk).
struct Crossing {
    int node;
    int slot;
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Dual 1-skeleton with a breadth-first spanning tree. Edges are glued slot
/// pairs, stored once from their lexicographically smaller end; non-tree edges
/// are the generators, numbered 1.. in edge order.
class DualSkeleton {
public:
    struct Edge {
        Crossing from;
        Crossing to;
    };

    /// partner[node][slot] is the slot glued to it, or node = -1 for none.
    /// Throws InputError if the graph is disconnected.
    DualSkeleton(const std::vector<std::array<Crossing, 4>>& partner, int basepoint);

    int num_nodes() const { return static_cast<int>(parent_.size()); }
    int basepoint() const { return basepoint_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_generators() const { return num_generators_; }
    /// 0 for tree edges.
    int generator_of_edge(int edge) const { return generator_[static_cast<std::size_t>(edge)]; }
    int edge_of_generator(int gen) const { return generator_edges_[static_cast<std::size_t>(gen - 1)]; }
    bool in_tree(int edge) const { return generator_of_edge(edge) == 0; }

    /// Signed letter for a crossing (0 for a tree edge).
    int letter(Crossing c) const;
    /// Word of a path given by its crossings (tree edges dropped).
    Word word(const std::vector<Crossing>& path) const;
    /// Tree path from the basepoint to `node`.
    std::vector<Crossing> tree_path(int node) const;
    /// Node reached by a crossing.
    Crossing across(Crossing c) const;
    /// Basepoint -> tail, the generator's edge, head -> basepoint.
    std::vector<Crossing> generator_loop(int gen) const;

private:
    std::vector<std::array<Crossing, 4>> partner_;
    std::vector<std::array<int, 4>> edge_at_;  // edge index per (node, slot), -1 if none
    std::vector<Edge> edges_;
    std::vector<int> generator_;
    std::vector<int> generator_edges_;
    std::vector<Crossing> parent_;  // crossing from the parent into this node; node = -1 at the root
    int basepoint_;
    int num_generators_ = 0;
};

/// Nodes are tetrahedra, one edge per glued face pair. Throws InputError for a
/// disconnected triangulation.
DualSkeleton dual_skeleton_manifold(const IdealTriangulation& t, int basepoint = 0);

struct ManifoldPresentation {
    DualSkeleton skeleton;
    /// One relator per edge class: the loop around that edge.
    GroupPresentation presentation;
};

ManifoldPresentation manifold_presentation(const IdealTriangulation& t, int basepoint = 0);

/// Nodes are disks, edges glued arc pairs; basepoint disk 0.
DualSkeleton dual_skeleton_surface(const SurfaceComplex& s);

struct SurfacePresentation {
    DualSkeleton skeleton;
    /// One relator per surface vertex: the cycle of arcs crossed around it.
    GroupPresentation presentation;
};

/// Throws InputError for an empty or disconnected surface.
SurfacePresentation surface_presentation(const IdealTriangulation& t, const SurfaceComplex& s);

struct SimplifiedPresentation {
    GroupPresentation presentation;
    /// Original generator index of each remaining generator.
    std::vector<int> surviving;
};

/// Eliminates generators that occur exactly once in some relator until a
/// single relator remains (or nothing more can be eliminated).
SimplifiedPresentation simplify_presentation(const GroupPresentation& p);

struct PresentationVerdict {
    bool is_surface = false;
    std::string diagnostic;
    GroupPresentation simplified;
};

/// Simplifies, then checks: one relator; every generator appears twice (once
/// with each sign when orientable); all polygon corners form one class.
PresentationVerdict verify_surface_presentation(const GroupPresentation& p, bool orientable);

/// Manifold word of every surface generator (index gen - 1).
std::vector<Word> embed_surface_generators(const DualSkeleton& manifold, const SurfaceComplex& s,
                                           const DualSkeleton& surface);

/// Substitute generator images into a word.
Word embed_word(const std::vector<Word>& images, const Word& w);

}  // namespace geoscan

#endif  // GEOSCAN_FUNDGROUP_HPP_
