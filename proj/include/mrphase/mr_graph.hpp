#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mrphase/pedigree.hpp"

namespace mrphase {

enum class Color : std::uint8_t { gray, red, blue, white };
enum class VertexKind : std::uint8_t { regular, supplementary, special, allele };
enum class EdgeSign : std::uint8_t { positive, negative };
enum class Provenance : std::uint8_t { c1, c2, c3, c4a, c4b, parity_anchor, bisect_half };

std::string_view color_name(Color color);
std::string_view provenance_name(Provenance provenance);

// Interval(i, s, t) with s < t, the special vertex b, or Allele(i, z), the
// maternal allele of a child at one heterozygous site (red = 1).
// Individuals are indices and sites are 0-based.
struct VertexId {
    enum class Tag : std::uint8_t { interval, special_b, allele };
    Tag tag = Tag::interval;
    std::uint32_t individual = 0;
    std::uint32_t s = 0;
    std::uint32_t t = 0;

    static VertexId interval(std::size_t i, std::size_t s, std::size_t t);
    static VertexId special_b();
    static VertexId allele(std::size_t i, std::size_t z);

    bool operator==(const VertexId&) const = default;
    auto operator<=>(const VertexId&) const = default;
};

struct VertexIdHash {
    std::size_t operator()(const VertexId& v) const noexcept;
};

struct VertexRecord {
    VertexId id;
    VertexKind kind = VertexKind::regular;
    Color color = Color::gray;
    bool het_pair = false;
};

// One recombination slot: child j inheriting from the parent on `side` across
// the parent's consecutive heterozygous sites s < t.
struct Term {
    std::uint32_t child = 0;
    Side side = Side::maternal;
    std::uint32_t s = 0;
    std::uint32_t t = 0;
    bool operator==(const Term&) const = default;
    auto operator<=>(const Term&) const = default;
};

struct SignedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    EdgeSign sign = EdgeSign::positive;
    Provenance provenance = Provenance::c1;
    bool removable = true;
    // Terms whose violation this edge counts. Two terms mean the edge carries
    // the minimum over a child's free orientation of both.
    std::vector<Term> terms;
};

struct ParityConstraintSet {
    enum class Kind : std::uint8_t { interval, allele_link };
    Kind kind = Kind::interval;
    std::vector<std::size_t> members;
    Color parity_color = Color::red;
    // The supplementary vertex of an interval set.
    std::optional<std::size_t> supplementary;
};

class MRGraph {
public:
    MRGraph();
    MRGraph(Pedigree pedigree, GenotypeMatrix genotypes);

    const Pedigree& pedigree() const noexcept { return pedigree_; }
    const GenotypeMatrix& genotypes() const noexcept { return genotypes_; }

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    const VertexRecord& vertex(std::size_t v) const { return vertices_[v]; }
    std::span<const VertexRecord> vertices() const noexcept { return vertices_; }
    std::span<const SignedEdge> edges() const noexcept { return edges_; }
    std::span<const ParityConstraintSet> parity_sets() const noexcept { return parity_sets_; }
    std::size_t special_b() const noexcept { return 0; }
    std::optional<std::size_t> find(const VertexId& id) const;
    std::vector<std::size_t> gray_vertices() const;
    bool has_allele_vertices(std::size_t individual) const;

    std::size_t add_vertex(const VertexRecord& record);
    std::size_t add_edge(SignedEdge edge);
    SignedEdge& edge_at(std::size_t e) { return edges_[e]; }
    std::size_t add_parity_set(ParityConstraintSet set);
    // Removes edges whose flag is set; indices of the survivors shift down.
    void remove_edges(const std::vector<bool>& doomed);
    void set_parity_set(std::size_t index, ParityConstraintSet set) { parity_sets_[index] = std::move(set); }

    // Vertex label such as "3[2,5]" using individual ids and 1-based sites.
    std::string label(std::size_t v) const;

private:
    Pedigree pedigree_;
    GenotypeMatrix genotypes_;
    std::vector<VertexRecord> vertices_;
    std::unordered_map<VertexId, std::size_t, VertexIdHash> index_;
    std::vector<SignedEdge> edges_;
    std::vector<ParityConstraintSet> parity_sets_;
};

// Full vertex coloring indexed like MRGraph vertices. Every entry is red or blue.
struct Coloring {
    std::vector<Color> colors;

    Color operator[](std::size_t v) const { return colors[v]; }
    bool operator==(const Coloring&) const = default;
};

// Colors gray vertices in order from bits (bit k set means red for the k-th
// gray vertex); forced vertices keep their color.
Coloring coloring_from_gray_bits(const MRGraph& graph, std::uint64_t bits);

// The Table-1 color of a genotype pair; (2,2) is gray before forcing.
Color color_for_genotype_pair(Genotype gs, Genotype gt);

// Unique color allowed for the het-het pair (s, t) of individual i by every
// trio containing i, or nullopt if both are allowed. Throws DataError if none is.
std::optional<Color> mendelian_forced_color(const Pedigree& pedigree, const GenotypeMatrix& genotypes, std::size_t i,
                                            std::size_t s, std::size_t t);

struct BuildOptions {
    bool cleanup = true;
    // Drops edges that agree under every consistent coloring.
    bool prune_inert = true;
};

// Step-wise construction. build_mr_graph runs the steps in order.
class MRGraphBuilder {
public:
    MRGraphBuilder(Pedigree pedigree, GenotypeMatrix genotypes);

    std::optional<std::size_t> mr_vertex(std::size_t i, std::size_t s, std::size_t t);
    // Regular vertices for every individual plus the pinned-site chain vertices.
    void create_regular_vertices();
    // Edges for the parent vertex `parent_vertex` (regular, het-het) towards one child.
    void mr_trio(std::size_t parent_vertex, std::size_t child);
    void run_trios();
    // Resolves terms that depend on a child's unpinned orientation.
    void resolve_orientations();
    void cleanup();
    void prune_inert_edges();

    MRGraph& graph() noexcept { return graph_; }
    MRGraph finish() &&;

private:
    struct PendingTerm {
        std::size_t parent_vertex;
        std::size_t z;
        Allele c;
        Provenance provenance;
        Term term;
    };

    std::optional<Allele> pin(std::size_t j, std::size_t z) const;
    std::optional<std::size_t> nearest_pin(std::size_t j, std::size_t z) const;
    std::optional<std::size_t> ensure_interval(std::size_t i, std::size_t a, std::size_t b);
    bool covered(std::size_t coparent, std::size_t child, std::size_t s, std::size_t t);
    void add_positive_dedup(std::size_t u, std::size_t v, Provenance provenance, std::vector<Term> terms);
    void resolve_with_alleles(std::size_t j, const std::vector<PendingTerm>& terms);
    std::vector<std::size_t> regular_cover(std::size_t i, std::size_t s, std::size_t t);

    MRGraph graph_;
    std::vector<std::vector<std::size_t>> het_sites_;
    std::vector<std::vector<std::size_t>> pinned_sites_;
    std::vector<std::vector<PendingTerm>> pending_;
    std::unordered_map<std::uint64_t, std::size_t> positive_keys_;
};

MRGraph build_mr_graph(const Pedigree& pedigree, const GenotypeMatrix& genotypes, const BuildOptions& options = {});

// Removes positive C1 edges {i_st, j_st} from a het-het supplementary vertex
// i_st to a child's same-interval vertex when every regular vertex of i inside
// [s,t] already has an edge to the child's vertex with the same interval.
void cleanup_supplementary_edges(MRGraph& graph);

bool edge_disagrees(const SignedEdge& edge, const Coloring& coloring);
std::vector<std::size_t> disagreeing_edges(const MRGraph& graph, const Coloring& coloring);
bool parity_satisfied(const ParityConstraintSet& set, const Coloring& coloring);
bool all_parity_satisfied(const MRGraph& graph, const Coloring& coloring);
// Forced and special vertices keep their colors.
bool respects_fixed_colors(const MRGraph& graph, const Coloring& coloring);

// Throws std::invalid_argument if the coloring violates a parity set.
HaplotypeConfiguration extract_haplotypes(const MRGraph& graph, const Coloring& coloring);

// The coloring a consistent configuration induces.
Coloring induced_coloring(const MRGraph& graph, const HaplotypeConfiguration& config);

}  // namespace mrphase
