#pragma once

#include <cstdint>
#include <vector>

#include "mge/rng.hpp"

#include "json.hpp"

namespace mge {

// One gene encodes one hidden neuron: a fixed-length vector of 8-bit codons.
struct Gene {
    std::vector<std::uint8_t> codons;

    bool operator==(const Gene&) const = default;
};

// Ordered list of genes; order determines mapping order and neuron indices.
struct ModularGenotype {
    std::vector<Gene> genes;

    std::size_t gene_count() const { return genes.size(); }
    std::size_t codon_count() const;
    std::size_t bit_count() const { return codon_count() * 8; }
    bool operator==(const ModularGenotype&) const = default;
};

// Classic GE genotype: one variable-length codon string.
struct FlatGenotype {
    std::vector<std::uint8_t> codons;

    std::size_t codon_count() const { return codons.size(); }
    std::size_t bit_count() const { return codons.size() * 8; }
    bool operator==(const FlatGenotype&) const = default;
};

Gene random_gene(Rng& rng, int gene_length);

// Gene count uniform in [sigma_lo, sigma_hi], each gene filled with uniform
// codons. Deterministic for a fixed Rng state.
ModularGenotype init_modular(Rng& rng, int sigma_lo, int sigma_hi, int gene_length);

// GE baseline initializer; the default [50, 150] brackets the smallest
// modular configuration (2 genes of 100 codons).
FlatGenotype init_flat(Rng& rng, int len_lo = 50, int len_hi = 150);

// Copies the genotype and flips exactly k distinct bit positions of its
// binary encoding. Bit 0 is the least-significant bit of the first codon;
// bits run codon by codon, gene by gene.
ModularGenotype flip_hamming_bits(const ModularGenotype& g, int k, Rng& rng);
FlatGenotype flip_hamming_bits(const FlatGenotype& g, int k, Rng& rng);

std::size_t hamming_distance(const ModularGenotype& a, const ModularGenotype& b);
std::size_t hamming_distance(const FlatGenotype& a, const FlatGenotype& b);

// Checkpoint format: list of integer lists (one list per gene).
nlohmann::ordered_json to_json(const ModularGenotype& g);
ModularGenotype modular_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const FlatGenotype& g);
FlatGenotype flat_from_json(const nlohmann::json& j);

} // namespace mge
