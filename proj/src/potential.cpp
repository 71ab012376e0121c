#include "ptspec/potential.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "ptspec/errors.hpp"

namespace ptspec {
namespace {

constexpr double kPoleFloor = 1e-300;
constexpr int kMaxNesting = 256;

enum class TokKind { Number, ImagNumber, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::size_t offset;
    double number = 0.0;    // Number / ImagNumber
    std::string ident;      // Ident
};

const char* tok_name(TokKind k) {
    switch (k) {
        case TokKind::Number:
        case TokKind::ImagNumber: return "number";
        case TokKind::Ident: return "identifier";
        case TokKind::Plus: return "'+'";
        case TokKind::Minus: return "'-'";
        case TokKind::Star: return "'*'";
        case TokKind::Slash: return "'/'";
        case TokKind::Caret: return "'^'";
        case TokKind::LParen: return "'('";
        case TokKind::RParen: return "')'";
        case TokKind::End: return "end of input";
    }
    return "?";
}

bool known_ident(const std::string& s) {
    static const std::array<const char*, 9> names = {"x", "i", "sin", "cos", "tan", "exp", "log", "sqrt", "abs"};
    for (const char* n : names)
        if (s == n) return true;
    return false;
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    const auto isident0 = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    const auto isident = [&](char c) { return isident0(c) || std::isdigit(static_cast<unsigned char>(c)); };
    while (pos < src.size()) {
        char c = src[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        std::size_t start = pos;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            // number := digits ("." digits)? (("e"|"E") ("+"|"-")? digits)?
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (pos < src.size() && src[pos] == '.') {
                ++pos;
                if (pos == src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                    throw SyntaxError(pos, {"digit"}, "missing fractional digits");
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            }
            if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
                std::size_t mark = pos;
                ++pos;
                if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
                if (pos == src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    // "2e" was the start of "2" followed by the identifier "e..."
                    pos = mark;
                } else {
                    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
                }
            }
            double value = 0.0;
            auto res = std::from_chars(src.data() + start, src.data() + pos, value);
            if (res.ec == std::errc::result_out_of_range)
                throw SyntaxError(start, {}, "numeric literal out of range");
            Token t{TokKind::Number, start, value, {}};
            // lexical adjacency: "2i" is one imaginary literal
            if (pos < src.size() && src[pos] == 'i' && (pos + 1 == src.size() || !isident(src[pos + 1]))) {
                ++pos;
                t.kind = TokKind::ImagNumber;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (isident0(c)) {
            while (pos < src.size() && isident(src[pos])) ++pos;
            std::string name(src.substr(start, pos - start));
            if (!known_ident(name)) throw UnknownIdentifier(name, start);
            out.push_back(Token{TokKind::Ident, start, 0.0, std::move(name)});
            continue;
        }
        TokKind kind;
        switch (c) {
            case '+': kind = TokKind::Plus; break;
            case '-': kind = TokKind::Minus; break;
            case '*': kind = TokKind::Star; break;
            case '/': kind = TokKind::Slash; break;
            case '^': kind = TokKind::Caret; break;
            case '(': kind = TokKind::LParen; break;
            case ')': kind = TokKind::RParen; break;
            default:
                throw SyntaxError(pos, {}, std::string("unexpected character '") + c + "'");
        }
        out.push_back(Token{kind, pos, 0.0, {}});
        ++pos;
    }
    out.push_back(Token{TokKind::End, src.size(), 0.0, {}});
    return out;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    int run(std::vector<ExprNode>& nodes) {
        nodes_ = &nodes;
        int root = expr();
        if (peek().kind != TokKind::End)
            throw SyntaxError(peek().offset,
                              {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"},
                              "trailing input");
        return root;
    }

  private:
    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }

    int add(ExprNode n) {
        nodes_->push_back(n);
        return static_cast<int>(nodes_->size()) - 1;
    }

    int expr() {
        int lhs = term();
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            TokKind op = take().kind;
            int rhs = term();
            lhs = add({op == TokKind::Plus ? ExprOp::Add : ExprOp::Sub, lhs, rhs, {}});
        }
        return lhs;
    }

    int term() {
        int lhs = factor();
        while (peek().kind == TokKind::Star || peek().kind == TokKind::Slash) {
            TokKind op = take().kind;
            int rhs = factor();
            lhs = add({op == TokKind::Star ? ExprOp::Mul : ExprOp::Div, lhs, rhs, {}});
        }
        return lhs;
    }

    // factor := ("-")? power
    int factor() {
        if (++depth_ > kMaxNesting)
            throw SyntaxError(peek().offset, {}, "expression nested too deeply");
        int result;
        if (peek().kind == TokKind::Minus) {
            take();
            result = add({ExprOp::Neg, power(), -1, {}});
        } else {
            result = power();
        }
        --depth_;
        return result;
    }

    // power := atom ("^" factor)?   (right-associative through factor)
    int power() {
        int base = atom();
        if (peek().kind == TokKind::Caret) {
            take();
            int exponent = factor();
            return add({ExprOp::Pow, base, exponent, {}});
        }
        return base;
    }

    int atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Number: {
                Token tok = take();
                return add({ExprOp::Const, -1, -1, cplx(tok.number, 0.0)});
            }
            case TokKind::ImagNumber: {
                Token tok = take();
                return add({ExprOp::Const, -1, -1, cplx(0.0, tok.number)});
            }
            case TokKind::Ident: {
                Token tok = take();
                if (tok.ident == "x") return add({ExprOp::Var, -1, -1, {}});
                if (tok.ident == "i") return add({ExprOp::Const, -1, -1, cplx(0.0, 1.0)});
                ExprOp op;
                if (tok.ident == "sin") op = ExprOp::Sin;
                else if (tok.ident == "cos") op = ExprOp::Cos;
                else if (tok.ident == "tan") op = ExprOp::Tan;
                else if (tok.ident == "exp") op = ExprOp::Exp;
                else if (tok.ident == "log") op = ExprOp::Log;
                else if (tok.ident == "sqrt") op = ExprOp::Sqrt;
                else op = ExprOp::Abs;
                expect(TokKind::LParen);
                int arg = expr();
                expect(TokKind::RParen);
                return add({op, arg, -1, {}});
            }
            case TokKind::LParen: {
                take();
                int inner = expr();
                expect(TokKind::RParen);
                return inner;
            }
            default:
                throw SyntaxError(t.offset, {"number", "'i'", "'x'", "function name", "'('"},
                                  std::string("unexpected ") + tok_name(t.kind));
        }
    }

    void expect(TokKind kind) {
        if (peek().kind != kind)
            throw SyntaxError(peek().offset, {tok_name(kind)},
                              std::string("unexpected ") + tok_name(peek().kind));
        take();
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    int depth_ = 0;
    std::vector<ExprNode>* nodes_ = nullptr;
};

cplx int_pow(cplx base, long n, double x) {
    bool invert = n < 0;
    unsigned long m = invert ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    cplx acc(1.0, 0.0);
    cplx sq = base;
    while (m) {
        if (m & 1) acc *= sq;
        sq *= sq;
        m >>= 1;
    }
    if (invert) {
        if (std::abs(acc) < kPoleFloor) throw PoleError(x);
        acc = cplx(1.0, 0.0) / acc;
    }
    return acc;
}

cplx eval_node(const PotentialExpr& p, int idx, double x) {
    const ExprNode& n = p.nodes[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case ExprOp::Const: return n.value;
        case ExprOp::Var: return cplx(x, 0.0);
        case ExprOp::Add: return eval_node(p, n.a, x) + eval_node(p, n.b, x);
        case ExprOp::Sub: return eval_node(p, n.a, x) - eval_node(p, n.b, x);
        case ExprOp::Mul: return eval_node(p, n.a, x) * eval_node(p, n.b, x);
        case ExprOp::Div: {
            cplx num = eval_node(p, n.a, x);
            cplx den = eval_node(p, n.b, x);
            if (std::abs(den) < kPoleFloor) throw PoleError(x);
            return num / den;
        }
        case ExprOp::Pow: {
            cplx base = eval_node(p, n.a, x);
            const ExprNode& e = p.nodes[static_cast<std::size_t>(n.b)];
            // integer exponents by repeated multiplication: exact branch, no
            // spurious imaginary part for negative real bases
            if (e.op == ExprOp::Const && e.value.imag() == 0.0 &&
                e.value.real() == std::nearbyint(e.value.real()) && std::abs(e.value.real()) <= 64.0)
                return int_pow(base, static_cast<long>(e.value.real()), x);
            return std::pow(base, eval_node(p, n.b, x));
        }
        case ExprOp::Neg: return -eval_node(p, n.a, x);
        case ExprOp::Sin: return std::sin(eval_node(p, n.a, x));
        case ExprOp::Cos: return std::cos(eval_node(p, n.a, x));
        case ExprOp::Tan: return std::tan(eval_node(p, n.a, x));
        case ExprOp::Exp: return std::exp(eval_node(p, n.a, x));
        case ExprOp::Log: return std::log(eval_node(p, n.a, x));
        case ExprOp::Sqrt: return std::sqrt(eval_node(p, n.a, x));
        case ExprOp::Abs: return cplx(std::abs(eval_node(p, n.a, x)), 0.0);
    }
    return {};
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print_node(const PotentialExpr& p, int idx, std::string& out) {
    const ExprNode& n = p.nodes[static_cast<std::size_t>(idx)];
    const auto binary = [&](const char* op) {
        out += '(';
        print_node(p, n.a, out);
        out += op;
        print_node(p, n.b, out);
        out += ')';
    };
    const auto func = [&](const char* name) {
        out += name;
        out += '(';
        print_node(p, n.a, out);
        out += ')';
    };
    switch (n.op) {
        case ExprOp::Const:
            // parse only ever yields nonnegative real or nonnegative imaginary literals
            if (n.value.imag() == 0.0) {
                out += shortest(n.value.real());
            } else {
                out += shortest(n.value.imag());
                out += 'i';
            }
            break;
        case ExprOp::Var: out += 'x'; break;
        case ExprOp::Add: binary("+"); break;
        case ExprOp::Sub: binary("-"); break;
        case ExprOp::Mul: binary("*"); break;
        case ExprOp::Div: binary("/"); break;
        case ExprOp::Pow: binary("^"); break;
        case ExprOp::Neg:
            out += "(-";
            print_node(p, n.a, out);
            out += ')';
            break;
        case ExprOp::Sin: func("sin"); break;
        case ExprOp::Cos: func("cos"); break;
        case ExprOp::Tan: func("tan"); break;
        case ExprOp::Exp: func("exp"); break;
        case ExprOp::Log: func("log"); break;
        case ExprOp::Sqrt: func("sqrt"); break;
        case ExprOp::Abs: func("abs"); break;
    }
}

}  // namespace

PotentialExpr parse_potential(std::string_view src) {
    PotentialExpr p;
    p.source = std::string(src);
    Parser parser(src);
    p.root = parser.run(p.nodes);
    return p;
}

cplx eval_potential(const PotentialExpr& p, double x) {
    cplx v = eval_node(p, p.root, x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PoleError(x);
    return v;
}

double pt_symmetry_defect(const PotentialExpr& p, int n_samples) {
    if (n_samples < 2) throw PreconditionError("pt_symmetry_defect needs n_samples >= 2");
    const double pi = std::acos(-1.0);
    double defect = 0.0;
    for (int j = 0; j < n_samples; ++j) {
        double x = -pi + 2.0 * pi * j / (n_samples - 1);
        double d = std::abs(std::conj(eval_potential(p, -x)) - eval_potential(p, x));
        defect = std::max(defect, d);
    }
    return defect;
}

PotentialExpr builtin_potential(const std::string& name) {
    if (name == "paper") return parse_potential("-6/(cos(x)+2i*sin(x))^2");
    if (name == "zero") return parse_potential("0");
    throw UnknownName(name);
}

std::string to_string(const PotentialExpr& p) {
    std::string out;
    print_node(p, p.root, out);
    return out;
}

}  // namespace ptspec
