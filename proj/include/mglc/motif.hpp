#pragma once

#include <string>
#include <vector>

#include "mglc/molgraph.hpp"

namespace mglc {

// Connected fragment produced by detaching bridge bonds. Holds its own copy
// of the subgraph; canonical_code identifies it up to isomorphism.
struct Motif {
    MolecularGraph graph;
    std::string canonical_code; // byte string; equal iff isomorphic
};

struct MotifDictionary {
    struct Entry {
        std::string canonical_code;
        long long frequency;
        std::string example_smiles;
    };
    // Descending by frequency, ascending by code on ties.
    std::vector<Entry> entries;

    int size() const { return static_cast<int>(entries.size()); }
    // Index of a code in entries, or -1.
    int find(const std::string& code) const;
};

// Bonds (u,v) with deg(u) >= 2, deg(v) >= 2 and at least one endpoint in a
// ring. The bond itself must additionally be a graph-theoretic bridge so that
// detaching it splits the molecule; ring-internal bonds in fused systems are
// excluded by that requirement.
std::vector<int> find_bridge_bonds(const MolecularGraph& g);

// Detach all bridge bonds and return the connected components, single atoms
// included, each with its canonical code.
std::vector<Motif> extract_motifs(const MolecularGraph& g);

// Isomorphism-invariant code via iterative neighborhood-label refinement with
// exact tie-breaking: on refinement ties, every tie-broken ordering is
// explored and the lexicographically smallest serialization wins. Connected
// graphs up to 64 atoms.
std::string canonical_code(const MolecularGraph& g);

// Count motif occurrences over the corpus (per occurrence, not per molecule)
// and keep the top K. Throws on K == 0 or an empty corpus.
MotifDictionary build_dictionary(const std::vector<MolecularGraph>& corpus, int top_k);

// Text round trip: one entry per line, "<frequency>\t<code_hex>\t<example_smiles>".
std::string dictionary_to_text(const MotifDictionary& dict);
MotifDictionary dictionary_from_text(const std::string& text);

// True when `pattern` is a subgraph of `host` matching element, aromatic flag
// and bond order. Used by the synthetic label rules.
bool contains_subgraph(const MolecularGraph& host, const MolecularGraph& pattern);

std::string code_to_hex(const std::string& code);
std::string hex_to_code(const std::string& hex);

} // namespace mglc
