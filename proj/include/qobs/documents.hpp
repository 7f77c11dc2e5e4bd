// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qobs/algebra.hpp"
#include "qobs/hilbert.hpp"
#include "qobs/observable.hpp"
#include "qobs/states.hpp"

namespace qobs {

enum class StructureKind {
  effect_algebra,
  mv_algebra,
  omp,
  boolean_algebra,
  fuzzy,
  hilbert,
};

const char* kind_name(StructureKind k);

/// Operator blocks of a hilbert-kind document: `@dim n`, `@effect <t>`
/// blocks of n rows of comma-separated complex entries, optional `@rho`
/// block for a density matrix.
struct HilbertDocument {
  int dim = 0;
  std::vector<std::pair<double, Matrix>> effects;
  std::optional<Matrix> rho;
};

/// A parsed and validated structure document. For non-hilbert kinds the
/// declared kind is enforced against the verified flags (kind_mismatch).
struct LoadedStructure {
  StructureKind kind = StructureKind::effect_algebra;
  StructurePtr structure;              // all non-hilbert kinds
  std::optional<MvStructure> mv;       // mv_algebra
  std::optional<FuzzyStructure> fuzzy; // fuzzy
  std::optional<HilbertDocument> hilbert;
};

LoadedStructure load_structure_document(const std::filesystem::path& path);

enum class DocumentType { structure, observable, family, state };

/// Classifies a document by its leading directives without validating it.
DocumentType detect_document_type(const std::filesystem::path& path);

/// `@structure <path>` (relative to the document) plus `@atom <t> <name>`
/// lines; returns the canonical observable.
Observable load_observable_document(const std::filesystem::path& path);

/// `@structure <path>` plus `@cum <t> <name>` lines, returned raw so the
/// caller can diagnose invalid families.
struct LoadedFamily {
  StructurePtr structure;
  std::vector<SpectralJump> jumps;
};

LoadedFamily load_family_document(const std::filesystem::path& path);

/// `@structure <path>` plus `@value <name> <p/q>` lines.
State load_state_document(const std::filesystem::path& path);

/// Canonical printers; reading a written document back and re-printing it
/// is byte-identical.
std::string observable_document_text(const Observable& x,
                                     const std::string& structure_ref);
std::string povm_document_text(const Povm& p);

void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace qobs
