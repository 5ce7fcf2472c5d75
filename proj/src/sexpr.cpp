#include "hqcp/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace hqcp {

std::string SExpr::str() const {
    switch (kind) {
        case Kind::Symbol:
            return text;
        case Kind::Number: {
            std::ostringstream os;
            os << number;
            return os.str();
        }
        case Kind::List: {
            std::ostringstream os;
            os << "(";
            for (size_t i = 0; i < items.size(); ++i) {
                if (i) os << " ";
                os << items[i].str();
            }
            os << ")";
            return os.str();
        }
    }
    return "";
}

namespace {

class Reader {
public:
    Reader(const std::string& text, std::string file)
        : text_(text), file_(std::move(file)) {}

    std::vector<SExpr> readAll() {
        std::vector<SExpr> out;
        skipSpace();
        while (!eof()) {
            out.push_back(readExpr());
            skipSpace();
        }
        return out;
    }

private:
    const std::string& text_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    SourceSpan here() const { return SourceSpan{file_, line_, col_}; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skipSpace() {
        while (!eof()) {
            char c = peek();
            if (c == ';') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr readExpr() {
        SourceSpan span = here();
        char c = peek();
        if (c == '(') {
            advance();
            SExpr e;
            e.kind = SExpr::Kind::List;
            e.span = span;
            skipSpace();
            while (!eof() && peek() != ')') {
                e.items.push_back(readExpr());
                skipSpace();
            }
            if (eof()) throw ParseError("unclosed parenthesis", span);
            advance();  // ')'
            return e;
        }
        if (c == ')') throw ParseError("unexpected ')'", span);
        std::string tok;
        while (!eof()) {
            char t = peek();
            if (t == '(' || t == ')' || t == ';' ||
                std::isspace(static_cast<unsigned char>(t)))
                break;
            tok.push_back(t);
            advance();
        }
        SExpr e;
        e.span = span;
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec == std::errc() && ptr == tok.data() + tok.size()) {
            e.kind = SExpr::Kind::Number;
            e.number = value;
        } else {
            e.kind = SExpr::Kind::Symbol;
            for (char& ch : tok)
                ch = static_cast<char>(
                    std::tolower(static_cast<unsigned char>(ch)));
            e.text = tok;
        }
        return e;
    }
};

}  // namespace

std::vector<SExpr> parseSExprs(const std::string& text,
                               const std::string& file) {
    Reader r(text, file);
    auto out = r.readAll();
    if (out.empty())
        throw ParseError("empty input", SourceSpan{file, 1, 1});
    return out;
}

}  // namespace hqcp
