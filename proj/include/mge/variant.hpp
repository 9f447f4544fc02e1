#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mge {

// Topology families. MGE/ALPHA/BETA restrict each hidden neuron to a single
// output connection (modular); ETA/MU allow several (monolithic). ALPHA, BETA
// and MU permit hidden-hidden links, MGE and ETA are single-layer.
// GE_BASELINE is the classic flat-genotype mapper used as a comparator.
enum class Variant {
    MGE,
    ALPHA,
    BETA,
    ETA,
    MU,
    GE_BASELINE,
};

constexpr bool is_modular(Variant v) {
    return v == Variant::MGE || v == Variant::ALPHA || v == Variant::BETA;
}

// True when the mapper extends <xnList> with references to already mapped
// neurons, enabling hidden-hidden connections.
constexpr bool is_multilayer(Variant v) {
    return v == Variant::ALPHA || v == Variant::BETA || v == Variant::MU;
}

std::string to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

} // namespace mge
