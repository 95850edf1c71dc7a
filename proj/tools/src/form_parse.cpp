#include "form_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace reebtool {

namespace {

using reebdbar::Complex;

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("form: " + what);
}

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

double parse_real(Cursor& c) {
    c.skip_ws();
    const char* start = c.s.c_str() + c.i;
    char* end = nullptr;
    double v = std::strtod(start, &end);
    if (end == start) bad("expected a number at \"" + c.s.substr(c.i) + "\"");
    c.i += static_cast<size_t>(end - start);
    return v;
}

// "(re+imi)" or "(re-imi)"
Complex parse_complex_literal(Cursor& c) {
    ++c.i;  // consume '('
    double re = parse_real(c);
    char sign = c.peek();
    if (sign != '+' && sign != '-')
        bad("complex literal needs re+imi or re-imi");
    ++c.i;
    double im = parse_real(c);
    if (c.peek() != 'i') bad("complex literal must end with i)");
    ++c.i;
    if (c.peek() != ')') bad("complex literal must end with i)");
    ++c.i;
    return {re, sign == '-' ? -im : im};
}

std::string parse_name(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    while (c.i < c.s.size() &&
           (std::isalnum(static_cast<unsigned char>(c.s[c.i])) ||
            c.s[c.i] == '_'))
        ++c.i;
    if (c.i == start) bad("expected a form name at \"" + c.s.substr(start) + "\"");
    return c.s.substr(start, c.i - start);
}

struct Term {
    Complex coef;
    std::string name;  // empty for a bare numeric term
    double bare_value = 0.0;
};

Term parse_term(Cursor& c, double leading_sign) {
    Term term;
    term.coef = Complex(leading_sign, 0.0);

    char ch = c.peek();
    bool have_coef = false;
    if (ch == '(') {
        term.coef *= parse_complex_literal(c);
        have_coef = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        double v = parse_real(c);
        if (c.peek() != '*') {
            // bare constant; only the zero form may be written this way
            term.bare_value = leading_sign * v;
            return term;
        }
        term.coef *= v;
        have_coef = true;
    }

    if (have_coef) {
        if (c.peek() != '*')
            bad("coefficient must be followed by * and a form name");
        ++c.i;
    }
    term.name = parse_name(c);
    return term;
}

}  // namespace

ParsedForm parse_form(const std::string& text) {
    Cursor c{text};
    if (c.done()) bad("empty form expression");

    std::vector<Term> terms;
    double sign = 1.0;
    if (c.peek() == '-') {
        sign = -1.0;
        ++c.i;
    } else if (c.peek() == '+') {
        ++c.i;
    }
    terms.push_back(parse_term(c, sign));
    while (!c.done()) {
        char op = c.peek();
        if (op != '+' && op != '-')
            bad("expected + or - before \"" + text.substr(c.i) + "\"");
        ++c.i;
        terms.push_back(parse_term(c, op == '-' ? -1.0 : 1.0));
    }

    // A lone literal is accepted only when it is exactly zero.
    if (terms.size() == 1 && terms[0].name.empty()) {
        if (terms[0].bare_value != 0.0)
            bad("a nonzero constant is not a (0,1)-form; only \"0\" denotes "
                "the zero form");
        ParsedForm out;
        out.is_zero = true;
        out.form.coeff = reebdbar::EquivariantFunction{
            1, [](Complex, double) { return Complex{}; }};
        return out;
    }

    reebdbar::EquivariantFunction acc{
        1, [](Complex, double) { return Complex{}; }};
    for (const Term& term : terms) {
        if (term.name.empty())
            bad("a constant term is not a (0,1)-form; only \"0\" alone "
                "denotes the zero form");
        reebdbar::LeafwiseForm01 piece = reebdbar::builtin_form01(term.name);
        acc = reebdbar::combine(acc, piece.coeff, Complex(1.0, 0.0), term.coef);
    }

    ParsedForm out;
    out.form.coeff = std::move(acc);
    return out;
}

}  // namespace reebtool
