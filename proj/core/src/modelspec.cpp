#include "oqs/modelspec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "oqs/labels.hpp"

namespace oqs {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& text) {
    throw std::invalid_argument(what + ": '" + text + "'");
}

double parse_number(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty())
        bad("invalid number in model string", text);
    return v;
}

/// Shortest decimal that parses back to exactly the same double.
std::string shortest_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

/// Splits an operator expression at '+'/'-' separators. A sign separates two
/// components only when it is followed by a digit or '.'; a sign followed by
/// anything else (or at position 0) belongs to the component text itself.
std::vector<std::string> split_components(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        char c = text[i];
        if ((c == '+' || c == '-') && i + 1 < text.size() &&
            (std::isdigit(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '.')) {
            parts.push_back(text.substr(start, i - start));
            start = (c == '+') ? i + 1 : i;  // a '-' separator doubles as the weight's sign
            i = start;                       // resume scanning inside the new component
        }
    }
    parts.push_back(text.substr(start));
    return parts;
}

std::pair<double, std::string> parse_component(const std::string& text) {
    auto star = text.find('*');
    if (star == std::string::npos) return {1.0, text};
    return {parse_number(text.substr(0, star)), text.substr(star + 1)};
}

}  // namespace

std::vector<std::pair<double, std::string>> parse_operator_expression(
    const std::string& text) {
    if (text.empty()) bad("empty operator expression", text);
    std::vector<std::pair<double, std::string>> ops;
    for (const auto& part : split_components(text)) {
        if (part.empty()) bad("empty component in operator expression", text);
        ops.push_back(parse_component(part));
    }
    return ops;
}

std::string format_operator_expression(
    const std::vector<std::pair<double, std::string>>& ops) {
    if (ops.empty()) throw std::invalid_argument("empty operator expression");
    if (ops.size() == 1 && ops[0].first == 1.0) return ops[0].second;
    std::string out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i > 0 && ops[i].first >= 0.0) out += '+';
        out += shortest_real(ops[i].first);
        out += '*';
        out += ops[i].second;
    }
    return out;
}

TrueModel parse_model_string(const std::string& raw) {
    std::string text = raw;
    text.erase(std::remove_if(text.begin(), text.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               text.end());
    TrueModel model;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        // commas inside brackets separate nothing; operators contain no commas,
        // so the first comma after the closing bracket ends the term.
        auto close = text.find(']', pos);
        if (close != std::string::npos && comma != std::string::npos && comma < close)
            comma = text.find(',', close);
        std::string term_text =
            text.substr(pos, (comma == std::string::npos ? text.size() : comma) - pos);
        pos = (comma == std::string::npos) ? text.size() : comma + 1;

        auto star = term_text.find('*');
        if (star == std::string::npos) bad("model term needs 'rate*KIND[op]'", term_text);
        auto open = term_text.find('[', star);
        if (open == std::string::npos || term_text.back() != ']')
            bad("model term needs 'rate*KIND[op]'", term_text);
        std::string kind_text = term_text.substr(star + 1, open - star - 1);

        TrueTerm term;
        if (kind_text == "C")
            term.kind = Kind::Coherent;
        else if (kind_text == "D")
            term.kind = Kind::Dissipative;
        else
            bad("unknown term kind (expected C or D)", term_text);
        term.rate = parse_number(term_text.substr(0, star));
        term.ops = parse_operator_expression(
            term_text.substr(open + 1, term_text.size() - open - 2));

        if (term.kind == Kind::Dissipative && term.rate < 0.0)
            bad("non-physical rate for dissipative term", term_text);
        for (const auto& [w, label] : term.ops) {
            (void)w;
            validate_label(label, term.kind);
        }
        model.terms.push_back(std::move(term));
    }
    if (model.terms.empty()) throw std::invalid_argument("empty model string");
    model.n_qubits();  // validates label-length consistency
    return model;
}

std::string format_model_string(const TrueModel& model) {
    std::string out;
    for (std::size_t i = 0; i < model.terms.size(); ++i) {
        const auto& t = model.terms[i];
        if (i > 0) out += ',';
        out += shortest_real(t.rate);
        out += '*';
        out += (t.kind == Kind::Coherent) ? 'C' : 'D';
        out += '[';
        out += format_operator_expression(t.ops);
        out += ']';
    }
    return out;
}

}  // namespace oqs
