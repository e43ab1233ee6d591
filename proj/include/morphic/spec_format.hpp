#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Parse failure with the 1-based line it was detected on.
class ParseError : public InputError {
public:
    ParseError(int line, const std::string& message)
        : InputError("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Parsed form of a morphism description file. Line-oriented, UTF-8:
///
///   # comment, blank lines ignored
///   name: thue-morse              (optional metadata)
///   expect: AP                    (optional: AP or NOT_AP)
///   alphabet: 0 1 2
///   start: 0
///   rule: 0 -> 0 1                (empty right side = empty word)
///   code: 0 -> a                  (optional; must then cover every letter)
///
/// Tokens are whitespace-delimited and may be multi-character.
struct MorphismSpecDocument {
    std::string name;
    std::string expect;
    std::vector<std::string> alphabet;
    std::string start;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules;
    std::vector<std::pair<std::string, std::string>> coding;

    friend bool operator==(const MorphismSpecDocument&, const MorphismSpecDocument&) = default;
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r')
            ++j;
        if (j > i)
            out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace detail

inline MorphismSpecDocument parse_spec(std::string_view text) {
    MorphismSpecDocument doc;
    bool saw_alphabet = false;
    bool saw_start = false;
    bool saw_name = false;
    bool saw_expect = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        std::vector<std::string> tokens = detail::split_tokens(raw);
        if (tokens.empty())
            continue;
        const std::string directive = tokens.front();
        tokens.erase(tokens.begin());

        if (directive == "name:") {
            if (saw_name)
                throw ParseError(line_no, "duplicate name line");
            if (tokens.size() != 1)
                throw ParseError(line_no, "name needs exactly one token");
            doc.name = tokens.front();
            saw_name = true;
        } else if (directive == "expect:") {
            if (saw_expect)
                throw ParseError(line_no, "duplicate expect line");
            if (tokens.size() != 1 || (tokens.front() != "AP" && tokens.front() != "NOT_AP"))
                throw ParseError(line_no, "expect must be AP or NOT_AP");
            doc.expect = tokens.front();
            saw_expect = true;
        } else if (directive == "alphabet:") {
            if (saw_alphabet)
                throw ParseError(line_no, "duplicate alphabet line");
            if (tokens.empty())
                throw ParseError(line_no, "alphabet must list at least one symbol");
            for (std::size_t i = 0; i < tokens.size(); ++i)
                for (std::size_t j = i + 1; j < tokens.size(); ++j)
                    if (tokens[i] == tokens[j])
                        throw ParseError(line_no, "duplicate alphabet symbol '" + tokens[i] + "'");
            doc.alphabet = tokens;
            saw_alphabet = true;
        } else if (directive == "start:") {
            if (saw_start)
                throw ParseError(line_no, "duplicate start line");
            if (tokens.size() != 1)
                throw ParseError(line_no, "start needs exactly one symbol");
            doc.start = tokens.front();
            saw_start = true;
        } else if (directive == "rule:" || directive == "code:") {
            if (tokens.empty())
                throw ParseError(line_no, "missing left-hand symbol");
            const std::string lhs = tokens.front();
            if (tokens.size() < 2 || tokens[1] != "->")
                throw ParseError(line_no, "expected '->' after the symbol");
            std::vector<std::string> rhs(tokens.begin() + 2, tokens.end());
            if (directive == "rule:") {
                for (const auto& r : doc.rules)
                    if (r.first == lhs)
                        throw ParseError(line_no, "duplicate rule for '" + lhs + "'");
                doc.rules.emplace_back(lhs, std::move(rhs));
            } else {
                if (rhs.size() != 1)
                    throw ParseError(line_no, "coding right side must be one symbol");
                for (const auto& c : doc.coding)
                    if (c.first == lhs)
                        throw ParseError(line_no, "duplicate coding for '" + lhs + "'");
                doc.coding.emplace_back(lhs, rhs.front());
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + directive + "'");
        }
    }

    if (!saw_alphabet)
        throw ParseError(line_no, "missing alphabet line");
    if (!saw_start)
        throw ParseError(line_no, "missing start line");

    auto declared = [&](const std::string& s) {
        for (const auto& t : doc.alphabet)
            if (t == s)
                return true;
        return false;
    };
    if (!declared(doc.start))
        throw ParseError(line_no, "start symbol '" + doc.start + "' is not declared");
    for (const auto& [lhs, rhs] : doc.rules) {
        if (!declared(lhs))
            throw ParseError(line_no, "rule for undeclared symbol '" + lhs + "'");
        for (const auto& t : rhs)
            if (!declared(t))
                throw ParseError(line_no, "rule image uses undeclared symbol '" + t + "'");
    }
    for (const auto& a : doc.alphabet) {
        bool found = false;
        for (const auto& [lhs, rhs] : doc.rules)
            if (lhs == a) {
                found = true;
                break;
            }
        if (!found)
            throw ParseError(line_no, "no rule for symbol '" + a + "'");
    }
    if (!doc.coding.empty()) {
        for (const auto& [lhs, rhs] : doc.coding) {
            (void)rhs;
            if (!declared(lhs))
                throw ParseError(line_no, "coding for undeclared symbol '" + lhs + "'");
        }
        for (const auto& a : doc.alphabet) {
            bool found = false;
            for (const auto& [lhs, rhs] : doc.coding)
                if (lhs == a) {
                    found = true;
                    break;
                }
            if (!found)
                throw ParseError(line_no, "coding does not cover symbol '" + a + "'");
        }
    }
    return doc;
}

/// Canonical rendering: metadata, alphabet, start, rules and codings in
/// alphabet order. parse(serialize(doc)) reproduces the canonical document.
inline std::string serialize_spec(const MorphismSpecDocument& doc) {
    std::string out;
    if (!doc.name.empty())
        out += "name: " + doc.name + "\n";
    if (!doc.expect.empty())
        out += "expect: " + doc.expect + "\n";
    out += "alphabet:";
    for (const auto& a : doc.alphabet)
        out += " " + a;
    out += "\nstart: " + doc.start + "\n";
    for (const auto& a : doc.alphabet)
        for (const auto& [lhs, rhs] : doc.rules)
            if (lhs == a) {
                out += "rule: " + lhs + " ->";
                for (const auto& t : rhs)
                    out += " " + t;
                out += "\n";
            }
    for (const auto& a : doc.alphabet)
        for (const auto& [lhs, rhs] : doc.coding)
            if (lhs == a)
                out += "code: " + lhs + " -> " + rhs + "\n";
    return out;
}

/// A document turned into working objects.
struct MorphicInput {
    Morphism morphism;
    std::optional<Coding> coding;
    Letter start;
    std::string name;
    std::string expect;
};

inline MorphicInput build_input(const MorphismSpecDocument& doc) {
    Alphabet alphabet(doc.alphabet);
    std::vector<Word> rules(static_cast<std::size_t>(alphabet.size()));
    for (const auto& [lhs, rhs] : doc.rules)
        rules[static_cast<std::size_t>(alphabet.index_of(lhs))] = alphabet.word(rhs);
    Morphism m(alphabet, std::move(rules));

    std::optional<Coding> coding;
    if (!doc.coding.empty()) {
        std::vector<std::string> target_names;
        for (const auto& a : doc.alphabet)
            for (const auto& [lhs, rhs] : doc.coding)
                if (lhs == a) {
                    bool present = false;
                    for (const auto& t : target_names)
                        if (t == rhs)
                            present = true;
                    if (!present)
                        target_names.push_back(rhs);
                }
        Alphabet target(target_names);
        std::vector<Letter> map(static_cast<std::size_t>(alphabet.size()));
        for (const auto& [lhs, rhs] : doc.coding)
            map[static_cast<std::size_t>(alphabet.index_of(lhs))] = target.index_of(rhs);
        coding = Coding(alphabet, std::move(target), std::move(map));
    }

    const Letter start = alphabet.index_of(doc.start);
    return MorphicInput{std::move(m), std::move(coding), start, doc.name, doc.expect};
}

} // namespace morphic
