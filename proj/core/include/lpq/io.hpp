#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpq/corpus.hpp"
#include "lpq/filterbank.hpp"
#include "lpq/grid.hpp"
#include "lpq/norms.hpp"
#include "lpq/verify.hpp"

// Text formats. Grid files:
//   # optional comment lines
//   n N
//   values, row-major, whitespace separated (one grid row per line for n = 2)
// Corpus files are JSON, either a list or {"corpus": [...]}, each entry
//   {"id": ..., "kind": ..., "n": 1, "N": 64, "seed": 0, "params": {...}}.
// All doubles are printed with 17 significant digits, so output is a pure
// function of the data.
namespace lpq {

GridFunction read_grid(std::istream& in);
GridFunction read_grid_file(const std::filesystem::path& path);
void write_grid(std::ostream& out, const GridFunction& f);
void write_grid_file(const std::filesystem::path& path, const GridFunction& f);

std::vector<CorpusSpec> parse_corpus(std::string_view json_text);
std::vector<CorpusSpec> read_corpus_file(const std::filesystem::path& path);
std::string corpus_to_json(std::span<const CorpusSpec> corpus);

std::string to_json(const NormReport& report);
std::string to_csv(const NormReport& report);

std::string to_json(const MorreyBesovReport& report);
std::string to_csv(const MorreyBesovReport& report);

std::string to_json(const EquivalenceReport& report);
/// Plot data: one row per (function, N) with the ratio.
std::string to_csv(const EquivalenceReport& report);

std::string to_json(const FubiniSweep& sweep);
std::string to_csv(const FubiniSweep& sweep);

std::string lemma23_json(std::span<const Lemma23Record> records);
std::string lemma23_csv(std::span<const Lemma23Record> records);

/// Columns x, y, |x - y|, k_full, k_allowed, sizes, ring maxima and the
/// per-shell ring counts as "k:first/second" joined by ';'.
std::string kernel_csv(std::span<const KernelEvaluation> rows, int dim);
std::string to_json(const DecayRecord& record);
std::string to_csv(const DecayRecord& record);

std::string to_json(const EmbeddingReport& report);
std::string to_csv(const EmbeddingReport& report);

/// Writes text to a file, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lpq
