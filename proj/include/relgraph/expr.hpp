#pragma once

// Hand-entry sugar for elements:
//   s:e        edge isometry          s:e.f     path isometry s_e s_f
//   p:v        vertex projection      adj(x)    adjoint
//   x * y      product                x + y, x - y, -x, (x)
//   3, 1/2, 0.25, i    scalars (i is the imaginary unit)
// Scalars only enter through `*`. A scalar on its own, or added to an
// element, is a parse error.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/algebra.hpp"

namespace relgraph {

namespace detail {

class ExprParser {
public:
    ExprParser(GraphHandle g, std::string_view text) : g_(std::move(g)), text_(text) {}

    Element parse() {
        Value v = sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        if (!v.element) {
            fail("expression is a scalar, not an element");
        }
        return *v.element;
    }

private:
    // Either a scalar or an element.
    struct Value {
        GaussianRational scalar{0};
        std::optional<Element> element;
    };

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("expression at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view w) {
        skip_space();
        if (text_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    static bool id_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && id_char(text_[pos_])) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Element to_element(const Value& v) const {
        if (v.element) {
            return *v.element;
        }
        throw parse_error("cannot add a scalar to an element");
    }

    Value combine_sum(Value a, Value b, bool minus) {
        if (minus) {
            b = negate(std::move(b));
        }
        if (!a.element && !b.element) {
            a.scalar += b.scalar;
            return a;
        }
        if (!a.element || !b.element) {
            fail("cannot add a scalar to an element");
        }
        return {0, add(*a.element, *b.element)};
    }

    static Value negate(Value v) {
        if (v.element) {
            v.element = scale(*v.element, -1);
        } else {
            v.scalar = -v.scalar;
        }
        return v;
    }

    static Value multiply(Value a, Value b) {
        if (!a.element && !b.element) {
            a.scalar *= b.scalar;
            return a;
        }
        if (!a.element) {
            return {0, scale(*b.element, a.scalar)};
        }
        if (!b.element) {
            return {0, scale(*a.element, b.scalar)};
        }
        return {0, star_lambda(*a.element, *b.element)};
    }

    Value sum() {
        Value acc = product();
        for (;;) {
            if (accept('+')) {
                acc = combine_sum(std::move(acc), product(), false);
            } else if (accept('-')) {
                acc = combine_sum(std::move(acc), product(), true);
            } else {
                return acc;
            }
        }
    }

    Value product() {
        Value acc = unary();
        while (accept('*')) {
            acc = multiply(std::move(acc), unary());
        }
        return acc;
    }

    Value unary() {
        if (accept('-')) {
            return negate(unary());
        }
        if (accept('+')) {
            return unary();
        }
        return primary();
    }

    Value primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        if (accept('(')) {
            Value v = sum();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (accept_word("adj(")) {
            Value v = sum();
            if (!accept(')')) {
                fail("expected ')'");
            }
            if (v.element) {
                v.element = adjoint(*v.element);
            } else {
                v.scalar = v.scalar.conj();
            }
            return v;
        }
        if (accept_word("s:")) {
            std::vector<std::string> edges{identifier()};
            while (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                edges.push_back(identifier());
            }
            try {
                return {0, path_isometry(g_, Path::of_names(*g_, edges))};
            } catch (const domain_error& e) {
                fail(e.what());
            }
        }
        if (accept_word("p:")) {
            std::string v = identifier();
            auto id = g_->find_vertex(v);
            if (!id) {
                fail("unknown vertex '" + v + "'");
            }
            return {0, vertex_projection(g_, *id)};
        }
        char c = text_[pos_];
        if (c == 'i' && (pos_ + 1 == text_.size() || !id_char(text_[pos_ + 1]))) {
            ++pos_;
            return {GaussianRational::i(), std::nullopt};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == '/')) {
                ++pos_;
            }
            return {parse_rational(text_.substr(start, pos_ - start)), std::nullopt};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    GraphHandle g_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Element parse_expression(const GraphHandle& g, std::string_view text) {
    return detail::ExprParser(g, text).parse();
}

} // namespace relgraph
