#pragma once

// Embedding file formats shared by the library and the CLI:
//   CSV   header `id,c0,c1,...`, one row per embedding
//   JSONL one object per line: {"id": <int>, "vector": [ ... ]}
// Parse failures throw ParseError carrying the 1-based line number.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "gaugelab/gauge.hpp"

namespace gaugelab {

enum class EmbeddingFormat { Csv, Jsonl };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Guesses from the extension; defaults to CSV.
EmbeddingFormat detect_format(const std::string& path);

EmbeddingMatrix parse_embeddings(const std::string& text, EmbeddingFormat format);
EmbeddingMatrix read_embeddings(const std::string& path, EmbeddingFormat format);

// CSV with %.17g rendering and '\n' line endings.
std::string embeddings_to_csv(const EmbeddingMatrix& e);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gaugelab
