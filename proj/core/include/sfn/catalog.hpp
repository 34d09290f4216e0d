#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sfn/cyclotomic.hpp"
#include "sfn/series.hpp"

namespace sfn {

/// A deterministic sequence a_1, a_2, ... with declared horizon and metadata.
/// Evaluation is memoized behind a mutex; generators must be pure.
struct CatalogEntry {
  std::string name;
  unsigned long conductor = 1;
  std::set<unsigned long> excluded_primes;  // the finite set S of the local property
  std::optional<unsigned> claimed_s;        // metadata only, never trusted by checks
  std::string note;
  std::uint64_t horizon = 0;
  std::function<CycElem(std::uint64_t)> gen;  // defined on 1..horizon

  CycElem at(std::uint64_t n) const;

  CatalogEntry() : cache_(std::make_shared<Cache>()) {}

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::uint64_t, CycElem> memo;
  };
  std::shared_ptr<Cache> cache_;
};

using SequenceSource = CatalogEntry;

// Raw integer sequences (classical 0-based indexing).
Int apery_number(unsigned long n);
Int domb_number(unsigned long n);
Int almkvist_zudilin_number(unsigned long n);

CatalogEntry geometric(const CycElem& c);
/// a_n = sum_{i=1}^{P} A_i zeta_P^{in}; stored at conductor 1 when the values
/// come out rational (always the case for P <= 2).
CatalogEntry periodic(const std::vector<Rational>& coefficients, unsigned long period);
CatalogEntry apery();
CatalogEntry domb();
CatalogEntry almkvist_zudilin();
CatalogEntry hadamard_product(const CatalogEntry& a, const CatalogEntry& b);

/// Lines "n,value", n strictly increasing from 1; value in canonical text form.
CatalogEntry ingest_csv(const std::string& path);
void export_csv(const CatalogEntry& entry, const std::string& path, std::uint64_t n_max);

/// Resolves a CLI sequence spec: "apery", "domb", "az", "geometric:<elem>",
/// "periodic:<A1>,...,<AP>", or a path to a CSV file.
CatalogEntry resolve_sequence(const std::string& spec);
std::vector<std::string> catalog_names();

TruncSeries<CycElem> sequence_series(const CatalogEntry& entry, std::size_t truncation);

}  // namespace sfn
