#include "geoscan/fundgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "geoscan/error.hpp"
#include "geoscan/union_find.hpp"

namespace geoscan {

namespace {

constexpr std::size_t kMaxSimplifiedLength = std::size_t{1} << 22;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int other_vertex(int a, int b, int c) {
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b && v != c) return v;
    return -1;
}

}  // namespace

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) {
        if (letter == 0) throw InputError("word contains the empty letter 0");
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t head = 0;
    std::size_t tail = r.size();
    while (tail - head >= 2 && r[head] == -r[tail - 1]) {
        ++head;
        --tail;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(head), r.begin() + static_cast<std::ptrdiff_t>(tail));
}

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& letter : out) letter = -letter;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word parse_word(std::string_view text) {
    Word out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++i;
            continue;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) throw InputError("bad character in word: " + std::string(text));
        int letter = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
        if (std::isupper(static_cast<unsigned char>(c))) letter = -letter;
        ++i;
        if (text.substr(i, 3) == "^-1") {
            letter = -letter;
            i += 3;
        } else if (text.substr(i, 5) == "⁻¹") {
            letter = -letter;
            i += 5;
        }
        out.push_back(letter);
    }
    return out;
}

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (int letter : w) {
        const int g = letter < 0 ? -letter : letter;
        if (g <= 26) {
            out += static_cast<char>('a' + g - 1);
        } else {
            out += "g" + std::to_string(g);
        }
        if (letter < 0) out += "^-1";
    }
    return out;
}

DualSkeleton::DualSkeleton(const std::vector<std::array<Crossing, 4>>& partner, int basepoint)
    : partner_(partner), basepoint_(basepoint) {
    const int n = static_cast<int>(partner.size());
    if (n == 0) throw InputError("empty dual graph");
    if (basepoint < 0 || basepoint >= n) throw InputError("basepoint out of range");
    edge_at_.assign(idx(n), {-1, -1, -1, -1});
    for (int node = 0; node < n; ++node) {
        for (int slot = 0; slot < 4; ++slot) {
            const Crossing here{node, slot};
            const Crossing there = partner[idx(node)][idx(slot)];
            if (there.node < 0) continue;
            if (there == here) throw InputError("slot glued to itself");
            if (partner[idx(there.node)][idx(there.slot)] != here) throw InputError("asymmetric slot gluing");
            if (std::pair(node, slot) < std::pair(there.node, there.slot)) {
                const int e = static_cast<int>(edges_.size());
                edges_.push_back({here, there});
                edge_at_[idx(node)][idx(slot)] = e;
                edge_at_[idx(there.node)][idx(there.slot)] = e;
            }
        }
    }

    parent_.assign(idx(n), Crossing{-1, -1});
    std::vector<bool> seen(idx(n), false);
    std::vector<bool> tree(edges_.size(), false);
    std::deque<int> queue{basepoint};
    seen[idx(basepoint)] = true;
    int reached = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int slot = 0; slot < 4; ++slot) {
            const int e = edge_at_[idx(u)][idx(slot)];
            if (e < 0) continue;
            const int v = partner_[idx(u)][idx(slot)].node;
            if (seen[idx(v)]) continue;
            seen[idx(v)] = true;
            ++reached;
            parent_[idx(v)] = Crossing{u, slot};
            tree[idx(e)] = true;
            queue.push_back(v);
        }
    }
    if (reached != n) throw InputError("dual graph is disconnected");

    generator_.assign(edges_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (tree[e]) continue;
        generator_[e] = ++num_generators_;
        generator_edges_.push_back(static_cast<int>(e));
    }
}

int DualSkeleton::letter(Crossing c) const {
    const int e = edge_at_[idx(c.node)][idx(c.slot)];
    if (e < 0) throw InputError("crossing through an unglued slot");
    const int g = generator_[idx(e)];
    if (g == 0) return 0;
    return edges_[idx(e)].from == c ? g : -g;
}

Word DualSkeleton::word(const std::vector<Crossing>& path) const {
    Word out;
    for (const auto& c : path) {
        const int l = letter(c);
        if (l != 0) out.push_back(l);
    }
    return free_reduce(out);
}

Crossing DualSkeleton::across(Crossing c) const { return partner_[idx(c.node)][idx(c.slot)]; }

std::vector<Crossing> DualSkeleton::tree_path(int node) const {
    std::vector<Crossing> path;
    while (node != basepoint_) {
        const Crossing pc = parent_[idx(node)];
        path.push_back(pc);
        node = pc.node;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Crossing> DualSkeleton::generator_loop(int gen) const {
    if (gen < 1 || gen > num_generators_) throw InputError("generator index out of range");
    const Edge& e = edges_[idx(edge_of_generator(gen))];
    std::vector<Crossing> loop = tree_path(e.from.node);
    loop.push_back(e.from);
    for (int node = e.to.node; node != basepoint_;) {
        const Crossing pc = parent_[idx(node)];
        loop.push_back(across(pc));
        node = pc.node;
    }
    return loop;
}

DualSkeleton dual_skeleton_manifold(const IdealTriangulation& t, int basepoint) {
    std::vector<std::array<Crossing, 4>> partner(idx(t.num_tetrahedra()));
    for (int tet = 0; tet < t.num_tetrahedra(); ++tet)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(tet, f);
            partner[idx(tet)][idx(f)] = Crossing{g.neighbor, g.perm[f]};
        }
    return DualSkeleton(partner, basepoint);
}

ManifoldPresentation manifold_presentation(const IdealTriangulation& t, int basepoint) {
    ManifoldPresentation out{dual_skeleton_manifold(t, basepoint), {}};
    out.presentation.num_generators = out.skeleton.num_generators();
    for (const auto& cycle : edge_cycles(t)) {
        std::vector<Crossing> path;
        for (const auto& step : cycle) path.push_back({step.tet, step.exit_face});
        out.presentation.relators.push_back(out.skeleton.word(path));
    }
    return out;
}

DualSkeleton dual_skeleton_surface(const SurfaceComplex& s) {
    if (s.disks.empty()) throw InputError("empty surface");
    std::vector<std::array<Crossing, 4>> partner(s.disks.size());
    for (std::size_t d = 0; d < s.disks.size(); ++d)
        for (int f = 0; f < 4; ++f) {
            const ArcRef a = s.partner[d][idx(f)];
            partner[d][idx(f)] = Crossing{a.disk, a.disk < 0 ? -1 : a.face};
        }
    return DualSkeleton(partner, 0);
}

SurfacePresentation surface_presentation(const IdealTriangulation& t, const SurfaceComplex& s) {
    SurfacePresentation out{dual_skeleton_surface(s), {}};
    out.presentation.num_generators = out.skeleton.num_generators();
    const std::size_t n = s.disks.size();
    std::vector<std::array<bool, 6>> visited(n, {false, false, false, false, false, false});
    for (std::size_t d0 = 0; d0 < n; ++d0) {
        for (int e0 = 0; e0 < 6; ++e0) {
            if (s.corner_vertex[d0][idx(e0)] < 0 || visited[d0][idx(e0)]) continue;
            int disk = static_cast<int>(d0);
            int a = kEdgeVertices[idx(e0)][0];
            int b = kEdgeVertices[idx(e0)][1];
            int exit = other_vertex(a, b, -1);
            const int start_exit = exit;
            std::vector<Crossing> path;
            for (std::size_t steps = 0;; ++steps) {
                if (steps > 6 * n) throw InconsistencyError("vertex walk did not close");
                visited[idx(disk)][idx(edge_index(a, b))] = true;
                path.push_back({disk, exit});
                const ArcRef next = s.partner[idx(disk)][idx(exit)];
                if (next.disk < 0) throw InconsistencyError("vertex walk left the surface");
                const int tet = s.disks[idx(disk)].tet;
                const Perm4 sigma = t.gluing(tet, exit).perm;
                const int d = other_vertex(a, b, exit);
                disk = next.disk;
                a = sigma[a];
                b = sigma[b];
                exit = sigma[d];
                if (disk == static_cast<int>(d0) && edge_index(a, b) == e0 && exit == start_exit) break;
            }
            out.presentation.relators.push_back(out.skeleton.word(path));
        }
    }
    return out;
}

SimplifiedPresentation simplify_presentation(const GroupPresentation& p) {
    std::vector<Word> rels;
    for (const auto& r : p.relators) {
        for (int l : r)
            if (l == 0 || std::abs(l) > p.num_generators) throw InputError("relator letter out of range");
        Word w = cyclic_reduce(r);
        if (!w.empty()) rels.push_back(std::move(w));
    }
    std::vector<bool> alive(idx(p.num_generators + 1), true);

    while (rels.size() > 1) {
        // Fewest total occurrences first, then the shortest relator.
        std::map<int, int> occurrences;
        for (const auto& w : rels)
            for (int l : w) ++occurrences[std::abs(l)];
        std::size_t chosen = rels.size();
        int gen = 0;
        std::tuple<int, std::size_t, int> best{0, 0, 0};
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            std::map<int, int> count;
            for (int l : rels[ri]) ++count[std::abs(l)];
            for (const auto& [g, c] : count) {
                if (c != 1) continue;
                const std::tuple<int, std::size_t, int> key{occurrences[g], rels[ri].size(), g};
                if (gen == 0 || key < best) {
                    best = key;
                    gen = g;
                    chosen = ri;
                }
            }
        }
        if (gen == 0) break;

        const Word& r = rels[chosen];
        const auto pos = static_cast<std::size_t>(
            std::find_if(r.begin(), r.end(), [&](int l) { return std::abs(l) == gen; }) - r.begin());
        Word rest(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
        rest.insert(rest.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
        // g^eps rest = 1
        const Word image = r[pos] > 0 ? inverse_word(rest) : rest;
        const Word image_inv = inverse_word(image);
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(chosen));
        alive[idx(gen)] = false;

        std::vector<Word> next;
        std::size_t total = 0;
        for (const auto& w : rels) {
            Word sub;
            for (int l : w) {
                if (l == gen)
                    sub.insert(sub.end(), image.begin(), image.end());
                else if (l == -gen)
                    sub.insert(sub.end(), image_inv.begin(), image_inv.end());
                else
                    sub.push_back(l);
            }
            sub = cyclic_reduce(sub);
            total += sub.size();
            if (!sub.empty()) next.push_back(std::move(sub));
        }
        if (total > kMaxSimplifiedLength) throw InputError("presentation grew too large during simplification");
        rels = std::move(next);
    }

    SimplifiedPresentation out;
    std::vector<int> renumber(idx(p.num_generators + 1), 0);
    for (int g = 1; g <= p.num_generators; ++g)
        if (alive[idx(g)]) {
            out.surviving.push_back(g);
            renumber[idx(g)] = static_cast<int>(out.surviving.size());
        }
    out.presentation.num_generators = static_cast<int>(out.surviving.size());
    for (auto& w : rels) {
        for (int& l : w) l = l > 0 ? renumber[idx(l)] : -renumber[idx(-l)];
        out.presentation.relators.push_back(std::move(w));
    }
    return out;
}

PresentationVerdict verify_surface_presentation(const GroupPresentation& p, bool orientable) {
    PresentationVerdict out;
    out.simplified = simplify_presentation(p).presentation;
    const auto& q = out.simplified;
    if (q.relators.size() != 1) {
        out.diagnostic = q.relators.empty() && q.num_generators == 0
                             ? "trivial group"
                             : "expected a single relator, found " + std::to_string(q.relators.size());
        return out;
    }
    const Word& r = q.relators.front();
    std::vector<int> plus(idx(q.num_generators + 1), 0);
    std::vector<int> minus(idx(q.num_generators + 1), 0);
    for (int l : r) ++(l > 0 ? plus : minus)[idx(std::abs(l))];
    bool same_sign_pair = false;
    for (int g = 1; g <= q.num_generators; ++g) {
        const int total = plus[idx(g)] + minus[idx(g)];
        if (total != 2) {
            out.diagnostic = "generator " + format_word({g}) + " appears " + std::to_string(total) + " times";
            return out;
        }
        if (plus[idx(g)] != 1) same_sign_pair = true;
    }
    if (orientable && same_sign_pair) {
        out.diagnostic = "orientable surface relator has a generator with repeated sign";
        return out;
    }
    if (!orientable && !same_sign_pair) {
        out.diagnostic = "non-orientable surface relator pairs every generator with its inverse";
        return out;
    }

    // Letter i runs from corner i to corner i+1; identified edges identify their ends.
    const int len = static_cast<int>(r.size());
    UnionFind corners(len);
    std::map<int, std::vector<int>> occurrences;
    for (int i = 0; i < len; ++i) occurrences[std::abs(r[idx(i)])].push_back(i);
    const auto tail = [&](int i) { return r[idx(i)] > 0 ? i : (i + 1) % len; };
    const auto head = [&](int i) { return r[idx(i)] > 0 ? (i + 1) % len : i; };
    for (const auto& [g, occ] : occurrences) {
        corners.unite(tail(occ[0]), tail(occ[1]));
        corners.unite(head(occ[0]), head(occ[1]));
    }
    for (int i = 1; i < len; ++i)
        if (corners.find(i) != corners.find(0)) {
            out.diagnostic = "polygon corners fall into more than one vertex class";
            return out;
        }
    out.is_surface = true;
    out.diagnostic = "surface group with " + std::to_string(q.num_generators) + " generators, euler characteristic " +
                     std::to_string(2 - q.num_generators);
    return out;
}

std::vector<Word> embed_surface_generators(const DualSkeleton& manifold, const SurfaceComplex& s,
                                           const DualSkeleton& surface) {
    std::vector<Word> out;
    for (int g = 1; g <= surface.num_generators(); ++g) {
        std::vector<Crossing> path;
        for (const auto& c : surface.generator_loop(g)) path.push_back({s.disks[idx(c.node)].tet, c.slot});
        out.push_back(manifold.word(path));
    }
    return out;
}

Word embed_word(const std::vector<Word>& images, const Word& w) {
    Word out;
    for (int l : w) {
        const int g = std::abs(l);
        if (g < 1 || g > static_cast<int>(images.size())) throw InputError("letter out of range in embed_word");
        const Word& img = images[idx(g - 1)];
        if (l > 0)
            out.insert(out.end(), img.begin(), img.end());
        else {
            const Word inv = inverse_word(img);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return free_reduce(out);
}

}  // namespace geoscan
