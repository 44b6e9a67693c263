#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gramwire {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed type expression or document; `offset` is a byte offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::string const& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Lexicon file problems; `line` is 1-based.
class LexiconError : public Error {
public:
    LexiconError(std::string const& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnknownWordError : public Error {
public:
    explicit UnknownWordError(std::string word)
        : Error("unknown word '" + word + "'"), word_(std::move(word)) {}
    std::string const& word() const { return word_; }

private:
    std::string word_;
};

class NotGrammaticalError : public Error {
public:
    using Error::Error;
};

/// A diagram failed validation or a rewrite hit a malformed shape.
class DiagramError : public Error {
public:
    using Error::Error;
};

}  // namespace gramwire
