#include "mge/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mge/kernels.hpp"

namespace mge {

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

std::string neuron_sentence(const Neuron& n) {
    std::ostringstream out;
    for (const auto& oc : n.output_conns)
        out << "(output" << oc.output << ':' << oc.weight.literal << ')';
    out << "*sig(";
    for (const auto& ic : n.input_conns)
        out << ic.weight.literal << '*' << ic.source.name() << " + ";
    out << n.bias.literal << "*1)";
    return out.str();
}

Network::Network(std::vector<Neuron> hidden, int output_count, int feature_count, Variant variant)
    : hidden_(std::move(hidden)), c_out_(output_count), d_(feature_count), variant_(variant) {
    validate();
    outputs_.assign(static_cast<std::size_t>(c_out_), {});
    for (int k = 1; k <= c_out_; ++k)
        for (std::size_t j = 0; j < hidden_.size(); ++j)
            for (std::size_t ci = 0; ci < hidden_[j].output_conns.size(); ++ci)
                if (hidden_[j].output_conns[ci].output == k)
                    outputs_[static_cast<std::size_t>(k - 1)].push_back(
                        {static_cast<int>(j), static_cast<int>(ci)});
}

void Network::validate() const {
    if (hidden_.empty()) throw std::invalid_argument("network needs at least one hidden neuron");
    if (c_out_ < 1) throw std::invalid_argument("network needs at least one output neuron");
    if (d_ < 1) throw std::invalid_argument("network needs at least one input feature");
    for (std::size_t j = 0; j < hidden_.size(); ++j) {
        const Neuron& n = hidden_[j];
        if (n.output_conns.empty())
            throw std::invalid_argument("hidden neuron without output connection");
        for (const auto& oc : n.output_conns)
            if (oc.output < 1 || oc.output > c_out_)
                throw std::invalid_argument("output index out of range");
        for (const auto& ic : n.input_conns) {
            if (ic.source.kind == NeuronSource::Kind::Feature) {
                if (ic.source.index < 1 || ic.source.index > d_)
                    throw std::invalid_argument("feature index out of range");
            } else {
                // feed-forward: only earlier neurons may be referenced
                if (ic.source.index < 1 || ic.source.index > static_cast<int>(j))
                    throw std::invalid_argument("hidden reference must point to an earlier neuron");
            }
        }
    }
}

std::vector<double> Network::hidden_activations(std::span<const double> x) const {
    std::vector<double> act(hidden_.size());
    for (std::size_t j = 0; j < hidden_.size(); ++j) {
        double z = 0.0;
        for (const auto& ic : hidden_[j].input_conns) {
            const double src = ic.source.kind == NeuronSource::Kind::Feature
                                   ? x[static_cast<std::size_t>(ic.source.index - 1)]
                                   : act[static_cast<std::size_t>(ic.source.index - 1)];
            z += ic.weight.value * src;
        }
        z += hidden_[j].bias.value;
        act[j] = sig(z);
    }
    return act;
}

std::vector<double> Network::forward(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_)
        throw std::invalid_argument("forward: expected " + std::to_string(d_) + " features");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("forward: non-finite input");

    const std::vector<double> act = hidden_activations(x);
    std::vector<double> s(static_cast<std::size_t>(c_out_));
    for (int k = 0; k < c_out_; ++k) {
        double z = 0.0;
        for (const auto& term : outputs_[static_cast<std::size_t>(k)]) {
            const Neuron& n = hidden_[static_cast<std::size_t>(term.hidden)];
            z += n.output_conns[static_cast<std::size_t>(term.conn)].weight.value *
                 act[static_cast<std::size_t>(term.hidden)];
        }
        s[static_cast<std::size_t>(k)] = sig(z);
    }
    if (c_out_ == 1) return {s[0], 1.0 - s[0]};

    // softmax over the sigmoidal output values
    double denom = 0.0;
    for (double v : s) denom += std::exp(v);
    std::vector<double> probs(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) probs[k] = std::exp(s[k]) / denom;
    return probs;
}

int Network::predict(std::span<const double> x) const {
    const std::vector<double> probs = forward(x);
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.size(); ++k)
        if (probs[k] > probs[best]) best = k;
    return static_cast<int>(best) + 1;
}

void Network::forward_batch(const std::vector<const double*>& feature_cols, std::size_t n,
                            double* probs) const {
    if (static_cast<int>(feature_cols.size()) != d_)
        throw std::invalid_argument("forward_batch: feature count mismatch");
    const auto& ops = kernels::active();

    std::vector<std::vector<double>> act(hidden_.size());
    std::vector<double> z(n);
    for (std::size_t j = 0; j < hidden_.size(); ++j) {
        ops.fill(z.data(), hidden_[j].bias.value, n);
        for (const auto& ic : hidden_[j].input_conns) {
            const double* src = ic.source.kind == NeuronSource::Kind::Feature
                                    ? feature_cols[static_cast<std::size_t>(ic.source.index - 1)]
                                    : act[static_cast<std::size_t>(ic.source.index - 1)].data();
            ops.axpy(z.data(), src, ic.weight.value, n);
        }
        kernels::sigmoid_inplace(z.data(), n);
        act[j] = z;
    }

    const std::size_t c = static_cast<std::size_t>(c_out_);
    std::vector<double> s(c * n);
    for (std::size_t k = 0; k < c; ++k) {
        double* row = s.data() + k * n;
        ops.fill(row, 0.0, n);
        for (const auto& term : outputs_[k]) {
            const Neuron& hn = hidden_[static_cast<std::size_t>(term.hidden)];
            ops.axpy(row, act[static_cast<std::size_t>(term.hidden)].data(),
                     hn.output_conns[static_cast<std::size_t>(term.conn)].weight.value, n);
        }
        kernels::sigmoid_inplace(row, n);
    }

    if (c_out_ == 1) {
        for (std::size_t p = 0; p < n; ++p) {
            probs[p] = s[p];
            probs[n + p] = 1.0 - s[p];
        }
        return;
    }
    for (std::size_t p = 0; p < n; ++p) {
        double denom = 0.0;
        for (std::size_t k = 0; k < c; ++k) denom += std::exp(s[k * n + p]);
        for (std::size_t k = 0; k < c; ++k) probs[k * n + p] = std::exp(s[k * n + p]) / denom;
    }
}

NetworkMetrics Network::metrics() const {
    NetworkMetrics m;
    m.neurons = static_cast<int>(hidden_.size());
    std::set<int> features;
    std::vector<int> depth(hidden_.size(), 1);
    int connections = 0;
    for (std::size_t j = 0; j < hidden_.size(); ++j) {
        const Neuron& n = hidden_[j];
        connections += static_cast<int>(n.input_conns.size()) + 1 // + bias
                       + static_cast<int>(n.output_conns.size());
        for (const auto& ic : n.input_conns) {
            if (ic.source.kind == NeuronSource::Kind::Feature) {
                features.insert(ic.source.index);
            } else {
                depth[j] = std::max(depth[j], depth[static_cast<std::size_t>(ic.source.index - 1)] + 1);
            }
        }
        m.layers = std::max(m.layers, depth[j]);
    }
    m.features_used = static_cast<int>(features.size());
    m.connections = connections;
    const long long a2 = static_cast<long long>(hidden_.size()) + c_out_;
    m.flops = 2LL * connections + 4LL * a2;
    return m;
}

std::string Network::output_string(int output_index) const {
    std::ostringstream out;
    out << "sig(";
    bool first = true;
    for (const auto& term : outputs_[static_cast<std::size_t>(output_index - 1)]) {
        if (!first) out << " + ";
        first = false;
        const Neuron& n = hidden_[static_cast<std::size_t>(term.hidden)];
        out << n.output_conns[static_cast<std::size_t>(term.conn)].weight.literal << "*sig(";
        for (const auto& ic : n.input_conns) out << ic.weight.literal << '*' << ic.source.name() << " + ";
        out << n.bias.literal << "*1)";
    }
    out << ')';
    return out.str();
}

std::string Network::to_string() const {
    std::ostringstream out;
    for (std::size_t j = 0; j < hidden_.size(); ++j)
        out << 'h' << (j + 1) << " = " << neuron_sentence(hidden_[j]) << '\n';
    for (int k = 1; k <= c_out_; ++k) out << "output" << k << " = " << output_string(k) << '\n';
    return out.str();
}

namespace {

// Subtree for one hidden neuron's sig expression. References to earlier
// neurons stay as h<i> leaves, exactly as they appear in the sentence.
void add_neuron_subtree(EvalTree& tree, int parent, const Neuron& n) {
    const int sig_node = tree.add_node("sig", parent);
    const int sum = tree.add_node("+", sig_node);
    for (const auto& ic : n.input_conns) {
        const int prod = tree.add_node("*", sum);
        tree.add_node(ic.weight.literal, prod);
        tree.add_node(ic.source.name(), prod);
    }
    const int bias = tree.add_node("*", sum);
    tree.add_node(n.bias.literal, bias);
    tree.add_node("1", bias);
}

} // namespace

EvalTree Network::to_eval_tree() const {
    EvalTree tree;
    const int root = tree.add_node("net");
    for (int k = 1; k <= c_out_; ++k) {
        const int sig_node = tree.add_node("sig", root);
        const int sum = tree.add_node("+", sig_node);
        for (const auto& term : outputs_[static_cast<std::size_t>(k - 1)]) {
            const Neuron& n = hidden_[static_cast<std::size_t>(term.hidden)];
            const int prod = tree.add_node("*", sum);
            tree.add_node(n.output_conns[static_cast<std::size_t>(term.conn)].weight.literal, prod);
            add_neuron_subtree(tree, prod, n);
        }
    }
    return tree;
}

nlohmann::ordered_json Network::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = d_;
    j["outputs"] = c_out_;
    j["variant"] = mge::to_string(variant_);
    nlohmann::ordered_json hidden = nlohmann::ordered_json::array();
    for (const Neuron& n : hidden_) {
        nlohmann::ordered_json nj;
        nj["bias"] = n.bias.literal;
        nlohmann::ordered_json ins = nlohmann::ordered_json::array();
        for (const auto& ic : n.input_conns)
            ins.push_back({{"src", ic.source.name()}, {"w", ic.weight.literal}});
        nj["inputs"] = std::move(ins);
        nlohmann::ordered_json outs = nlohmann::ordered_json::array();
        for (const auto& oc : n.output_conns)
            outs.push_back({{"output", oc.output}, {"w", oc.weight.literal}});
        nj["out"] = std::move(outs);
        hidden.push_back(std::move(nj));
    }
    j["hidden"] = std::move(hidden);
    return j;
}

namespace {

WeightLiteral weight_from_literal(const std::string& lit) {
    return {std::strtod(lit.c_str(), nullptr), lit};
}

NeuronSource source_from_name(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'h'))
        throw std::invalid_argument("bad source name: " + name);
    return {name[0] == 'x' ? NeuronSource::Kind::Feature : NeuronSource::Kind::Hidden,
            std::atoi(name.c_str() + 1)};
}

} // namespace

Network Network::from_json(const nlohmann::json& j) {
    std::vector<Neuron> hidden;
    for (const auto& nj : j.at("hidden")) {
        Neuron n;
        n.bias = weight_from_literal(nj.at("bias").get<std::string>());
        for (const auto& ij : nj.at("inputs"))
            n.input_conns.push_back(
                {source_from_name(ij.at("src").get<std::string>()),
                 weight_from_literal(ij.at("w").get<std::string>())});
        for (const auto& oj : nj.at("out"))
            n.output_conns.push_back(
                {oj.at("output").get<int>(), weight_from_literal(oj.at("w").get<std::string>())});
        hidden.push_back(std::move(n));
    }
    const auto variant = variant_from_string(j.at("variant").get<std::string>());
    if (!variant) throw std::invalid_argument("unknown variant in network file");
    return Network(std::move(hidden), j.at("outputs").get<int>(), j.at("d").get<int>(), *variant);
}

std::string EvalTree::to_string() const {
    std::string out;
    if (node_count() > 0) print(0, out);
    return out;
}

void EvalTree::print(int id, std::string& out) const {
    out += label(id);
    const auto& kids = children(id);
    if (kids.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        print(kids[i], out);
    }
    out += ')';
}

} // namespace mge
