#include "mge/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mge {

void Grammar::add_rule(const std::string& nonterminal, std::vector<Production> alternatives) {
    auto it = rules_.find(nonterminal);
    if (it == rules_.end()) {
        order_.push_back(nonterminal);
        rules_.emplace(nonterminal, std::move(alternatives));
        if (start_.empty()) start_ = nonterminal;
    } else {
        // Repeated left-hand side appends alternatives, as conventional tools do.
        for (auto& alt : alternatives) it->second.push_back(std::move(alt));
    }
}

void Grammar::set_start(std::string nonterminal) { start_ = std::move(nonterminal); }

const std::vector<Production>& Grammar::alternatives(const std::string& nonterminal) const {
    auto it = rules_.find(nonterminal);
    if (it == rules_.end()) throw GrammarError("undefined nonterminal <" + nonterminal + ">");
    return it->second;
}

std::size_t Grammar::alternative_count(const std::string& nonterminal) const {
    return alternatives(nonterminal).size();
}

std::unordered_set<std::string> Grammar::terminal_set() const {
    std::unordered_set<std::string> terms;
    for (const auto& name : order_)
        for (const auto& alt : rules_.at(name))
            for (const auto& sym : alt)
                if (!sym.is_nonterminal()) terms.insert(sym.text);
    return terms;
}

void Grammar::validate() const {
    if (start_.empty() || rules_.empty()) throw GrammarError("grammar has no start rule");
    if (!has_nonterminal(start_)) throw GrammarError("start symbol <" + start_ + "> has no rule");
    for (const auto& name : order_) {
        const auto& alts = rules_.at(name);
        if (alts.empty()) throw GrammarError("nonterminal <" + name + "> has no alternatives");
        for (const auto& alt : alts)
            for (const auto& sym : alt)
                if (sym.is_nonterminal() && !has_nonterminal(sym.text))
                    throw GrammarError("undefined nonterminal <" + sym.text + "> referenced from <" + name + ">");
    }
}

// --- BNF text ---------------------------------------------------------------

namespace {

struct LogicalLine {
    std::string text;
    int line_no; // of the first physical line
};

std::vector<LogicalLine> logical_lines(const std::string& text) {
    std::vector<LogicalLine> out;
    std::istringstream in(text);
    std::string phys;
    int line_no = 0;
    int start_line = 0;
    std::string pending;
    while (std::getline(in, phys)) {
        ++line_no;
        if (!phys.empty() && phys.back() == '\r') phys.pop_back();
        if (pending.empty()) start_line = line_no;
        if (!phys.empty() && phys.back() == '\\') {
            phys.pop_back();
            pending += phys;
            continue;
        }
        pending += phys;
        out.push_back({pending, start_line});
        pending.clear();
    }
    if (!pending.empty()) out.push_back({pending, start_line});
    return out;
}

bool is_blank_or_comment(const std::string& s) {
    for (char ch : s) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

// Tokenize one alternative: <name> is a nonterminal, '...' a verbatim
// terminal, everything else whitespace-split terminal text.
Production parse_alternative(const std::string& text, int line_no, int col_base) {
    Production prod;
    std::string plain;
    auto flush_plain = [&]() {
        std::size_t i = 0;
        while (i < plain.size()) {
            while (i < plain.size() && std::isspace(static_cast<unsigned char>(plain[i]))) ++i;
            std::size_t j = i;
            while (j < plain.size() && !std::isspace(static_cast<unsigned char>(plain[j]))) ++j;
            if (j > i) prod.push_back(Symbol::term(plain.substr(i, j - i)));
            i = j;
        }
        plain.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '<') {
            flush_plain();
            const auto close = text.find('>', i + 1);
            if (close == std::string::npos)
                throw GrammarError("unterminated '<'", line_no, col_base + static_cast<int>(i) + 1);
            const std::string name = text.substr(i + 1, close - i - 1);
            if (name.empty())
                throw GrammarError("empty nonterminal name '<>'", line_no, col_base + static_cast<int>(i) + 1);
            prod.push_back(Symbol::nt(name));
            i = close + 1;
        } else if (ch == '\'') {
            flush_plain();
            const auto close = text.find('\'', i + 1);
            if (close == std::string::npos)
                throw GrammarError("unterminated quoted terminal", line_no, col_base + static_cast<int>(i) + 1);
            prod.push_back(Symbol::term(text.substr(i + 1, close - i - 1)));
            i = close + 1;
        } else if (ch == '>') {
            throw GrammarError("stray '>'", line_no, col_base + static_cast<int>(i) + 1);
        } else {
            plain.push_back(ch);
            ++i;
        }
    }
    flush_plain();
    if (prod.empty())
        throw GrammarError("empty alternative", line_no, col_base + 1);
    return prod;
}

} // namespace

Grammar parse_bnf(const std::string& text) {
    Grammar g;
    for (const auto& [line, line_no] : logical_lines(text)) {
        if (is_blank_or_comment(line)) continue;
        const auto sep = line.find("::=");
        if (sep == std::string::npos)
            throw GrammarError("expected '::=' in rule", line_no, 1);
        // left-hand side: exactly one <name>
        const auto lt = line.find('<');
        const auto gt = line.find('>');
        if (lt == std::string::npos || gt == std::string::npos || gt < lt || gt > sep)
            throw GrammarError("rule left-hand side must be a single <name>", line_no, 1);
        for (std::size_t i = 0; i < sep; ++i) {
            if (i >= lt && i <= gt) continue;
            if (!std::isspace(static_cast<unsigned char>(line[i])))
                throw GrammarError("unexpected text before '::='", line_no, static_cast<int>(i) + 1);
        }
        const std::string lhs = line.substr(lt + 1, gt - lt - 1);
        if (lhs.empty()) throw GrammarError("empty rule name", line_no, static_cast<int>(lt) + 1);

        // right-hand side: alternatives split on '|' outside quotes
        const std::string rhs = line.substr(sep + 3);
        std::vector<Production> alts;
        std::string current;
        bool in_quote = false;
        int col_base = static_cast<int>(sep) + 3;
        int alt_col = col_base;
        for (std::size_t i = 0; i <= rhs.size(); ++i) {
            const bool end = i == rhs.size();
            const char ch = end ? '|' : rhs[i];
            if (!end && ch == '\'') in_quote = !in_quote;
            if (ch == '|' && !in_quote) {
                alts.push_back(parse_alternative(current, line_no, alt_col));
                current.clear();
                alt_col = col_base + static_cast<int>(i) + 1;
            } else {
                current.push_back(ch);
            }
        }
        if (in_quote) throw GrammarError("unterminated quoted terminal", line_no, col_base);
        g.add_rule(lhs, std::move(alts));
    }
    g.validate();
    return g;
}

Grammar parse_bnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GrammarError("cannot open grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bnf(buf.str());
}

namespace {

bool needs_quoting(const std::string& term) {
    if (term.empty()) return true;
    for (char ch : term)
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '|' || ch == '<' || ch == '>' ||
            ch == '\'' || ch == '#')
            return true;
    return false;
}

} // namespace

std::string render_bnf(const Grammar& g) {
    std::ostringstream out;
    for (const auto& name : g.nonterminal_order()) {
        out << '<' << name << "> ::= ";
        const auto& alts = g.alternatives(name);
        for (std::size_t a = 0; a < alts.size(); ++a) {
            if (a) out << " | ";
            for (std::size_t s = 0; s < alts[a].size(); ++s) {
                const Symbol& sym = alts[a][s];
                if (sym.is_nonterminal()) {
                    out << '<' << sym.text << '>';
                } else if (needs_quoting(sym.text)) {
                    out << '\'' << sym.text << '\'';
                } else {
                    if (s && !alts[a][s - 1].is_nonterminal()) out << ' ';
                    out << sym.text;
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

// --- overlay ----------------------------------------------------------------

std::size_t GrammarOverlay::alternative_count(const std::string& nonterminal) const {
    std::size_t n = base_->alternative_count(nonterminal);
    auto it = appended_.find(nonterminal);
    if (it != appended_.end()) n += it->second.size();
    return n;
}

GrammarOverlay::AltRef GrammarOverlay::alternative(const std::string& nonterminal, std::size_t index) const {
    const auto& base_alts = base_->alternatives(nonterminal);
    if (index < base_alts.size()) return {&base_alts[index], nullptr};
    const auto it = appended_.find(nonterminal);
    const std::size_t k = index - base_alts.size();
    if (it == appended_.end() || k >= it->second.size())
        throw GrammarError("alternative index out of range for <" + nonterminal + ">");
    return {nullptr, &it->second[k]};
}

void GrammarOverlay::append_terminal(const std::string& nonterminal, const std::string& terminal) {
    if (!base_->has_nonterminal(nonterminal))
        throw GrammarError("cannot extend undefined nonterminal <" + nonterminal + ">");
    auto& list = appended_[nonterminal];
    if (std::find(list.begin(), list.end(), terminal) != list.end())
        throw GrammarError("duplicate appended terminal '" + terminal + "' for <" + nonterminal + ">");
    list.push_back(terminal);
}

// --- neuron grammar ---------------------------------------------------------

int output_neuron_count(int class_count) { return class_count > 2 ? class_count : 1; }

Grammar build_neuron_grammar(const NeuronGrammarOptions& opts) {
    if (opts.features < 1) throw GrammarError("neuron grammar needs features >= 1");
    if (opts.outputs < 1) throw GrammarError("neuron grammar needs outputs >= 1");
    if (opts.fixed_output > opts.outputs) throw GrammarError("fixed output index out of range");

    Grammar g;
    const Symbol Num = Symbol::nt("Number");
    const Symbol Sum = Symbol::nt("Sum");
    const Symbol Xn = Symbol::nt("xnList");
    const Symbol OutN = Symbol::nt("OutputNeuron");

    const Production conn = {Symbol::term("("), OutN, Symbol::term(":"), Num, Symbol::term(")")};
    const Production tail = {Symbol::term("*sig("), Sum, Symbol::term(" + "), Num, Symbol::term("*1)")};

    auto concat = [](std::initializer_list<Production> parts) {
        Production p;
        for (const auto& part : parts) p.insert(p.end(), part.begin(), part.end());
        return p;
    };

    if (opts.single_output_conn) {
        g.add_rule("S", {concat({conn, tail})});
    } else {
        g.add_rule("S", {concat({{Symbol::nt("OutputConns")}, tail})});
        g.add_rule("OutputConns", {conn, concat({{Symbol::nt("OutputConns")}, conn})});
    }

    g.add_rule("Sum", {{Num, Symbol::term("*"), Xn},
                       {Sum, Symbol::term(" + "), Num, Symbol::term("*"), Xn}});

    std::vector<Production> xs;
    for (int i = 1; i <= opts.features; ++i) xs.push_back({Symbol::term("x" + std::to_string(i))});
    g.add_rule("xnList", std::move(xs));

    if (opts.weight_form == WeightForm::SignedFraction) {
        g.add_rule("Number", {{Symbol::nt("Sign"), Symbol::term("0."), Symbol::nt("Digitlist")}});
        g.add_rule("Sign", {{Symbol::term("+")}, {Symbol::term("-")}});
        g.add_rule("Digitlist", {{Symbol::nt("Digit")}, {Symbol::nt("Digit"), Symbol::nt("Digitlist")}});
    } else {
        g.add_rule("Number", {{Symbol::nt("Digit"), Symbol::term("."), Symbol::nt("Digit"), Symbol::nt("Digit")}});
    }
    std::vector<Production> digits;
    for (int i = 0; i <= 9; ++i) digits.push_back({Symbol::term(std::to_string(i))});
    g.add_rule("Digit", std::move(digits));

    std::vector<Production> outs;
    if (opts.fixed_output > 0) {
        outs.push_back({Symbol::term("output" + std::to_string(opts.fixed_output))});
    } else {
        for (int i = 1; i <= opts.outputs; ++i)
            outs.push_back({Symbol::term("output" + std::to_string(i))});
    }
    g.add_rule("OutputNeuron", std::move(outs));

    g.set_start("S");
    g.validate();
    return g;
}

Grammar build_neuron_grammar(int features, int class_count, Variant variant) {
    NeuronGrammarOptions opts;
    opts.features = features;
    opts.outputs = output_neuron_count(class_count);
    opts.single_output_conn = is_modular(variant);
    return build_neuron_grammar(opts);
}

Grammar build_network_grammar(const NeuronGrammarOptions& opts) {
    NeuronGrammarOptions neuron_opts = opts;
    neuron_opts.single_output_conn = true; // the GE comparator evolves single-layer nets
    Grammar neuron = build_neuron_grammar(neuron_opts);

    Grammar g;
    g.add_rule("Net", {{Symbol::nt("NeuronList")}});
    g.add_rule("NeuronList", {{Symbol::nt("S")},
                              {Symbol::nt("S"), Symbol::term("; "), Symbol::nt("NeuronList")}});
    for (const auto& name : neuron.nonterminal_order())
        g.add_rule(name, neuron.alternatives(name));
    g.set_start("Net");
    g.validate();
    return g;
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::MGE: return "mge";
        case Variant::ALPHA: return "alpha";
        case Variant::BETA: return "beta";
        case Variant::ETA: return "eta";
        case Variant::MU: return "mu";
        case Variant::GE_BASELINE: return "ge";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view name) {
    if (name == "mge" || name == "MGE") return Variant::MGE;
    if (name == "alpha") return Variant::ALPHA;
    if (name == "beta") return Variant::BETA;
    if (name == "eta") return Variant::ETA;
    if (name == "mu") return Variant::MU;
    if (name == "ge" || name == "ge_baseline") return Variant::GE_BASELINE;
    return std::nullopt;
}

} // namespace mge
