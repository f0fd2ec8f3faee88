#pragma once

#include <array>

#include "bcn/analysis.hpp"
#include "bcn/dsl.hpp"

namespace bcn::casestudy {

/// One triage row: a vital-sign reading and the initial diagnosis it is
/// mapped to before any history exists.
struct TriageEntry {
  std::array<std::string, 3> vitals;  // bt, bp, hf
  std::string diagnosis;
};

struct CaseStudy {
  Bcn context;  // nurse-side estimation and prescription network
  Bcn plant;    // patient response network
  DiagnosisSpec diagnosis;
  SetExpr correct_diagnosis_predicate;
  SetExpr healthy_predicate;
  std::vector<TriageEntry> triage;
  std::vector<std::string> assumptions;
};

/// The two bundled model sources; the files under models/ carry the same
/// text and a test keeps them in sync.
const char* patient_context_source();
const char* patient_model_source();

/// Parses and compiles the bundled sources and assembles the verification
/// targets.
CaseStudy load_case_study(int threads = 0);

/// Initial diagnosis assigned from the first reading alone.
std::string triage(const std::string& bt, const std::string& bp,
                   const std::string& hf);

/// Initial context state: triaged diagnosis plus the declared init values
/// of the remaining variables.
CanonicalVector initial_context_state(const CaseStudy& cs,
                                      const CanonicalVector& first_reading);

/// Negative control: redirects one transition column of the closed loop
/// onto itself at the smallest misdiagnosed state, creating a cycle
/// outside the healthy target (and outside the correct-diagnosis set).
Bn make_mutant(const ClosedLoop& loop, const DiagnosisSpec& spec);

}  // namespace bcn::casestudy
