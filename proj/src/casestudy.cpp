#include "bcn/casestudy.hpp"

namespace bcn::casestudy {

namespace {

// Authored protocol tables. The published construction fixes the variable
// inventory and the dimensions but deliberately leaves the concrete rule
// tables open; the ones below are an example instantiation, validated by
// the analysis suite rather than asserted as clinical ground truth.
constexpr const char* kPatientContextSource = R"bcn(// Nurse-side context network: estimates the patient's condition from the
// latest vital-sign reading, then prescribes a therapy and a care location.
//
// Estimation grades the reading by how many vitals are out of range:
// none -> healthy, one -> convalescent, two -> ill, three -> critical.
// The observation grade is only ever assigned by triage (first contact);
// the update rules never produce it.
model patient_context {
  input bt : { low, normal, high }
  input bp : { low, normal, high }
  input hf : { low, normal, high }

  state diagnosis : { healthy, convalescent, observation, ill, critical } init observation
  state diag_streak : { one, two, many } init one
  state therapy : { Th0, Th1, Th2, Th3, Th4, Th5 } init Th0
  state location : { home, ward, icu } init home

  output rx_therapy : { Th0, Th1, Th2, Th3, Th4, Th5 }
  output rx_location : { home, ward, icu }

  update diagnosis {
    case bt == normal && bp == normal && hf == normal -> healthy;
    case (bt != normal && bp == normal && hf == normal)
      || (bt == normal && bp != normal && hf == normal)
      || (bt == normal && bp == normal && hf != normal) -> convalescent;
    case bt != normal && bp != normal && hf != normal -> critical;
    default -> ill;
  }

  // Consecutive identical diagnoses, counted with saturation at "many"
  // (three or more).
  update diag_streak {
    case !( (next(diagnosis) == healthy      && diagnosis == healthy)
         || (next(diagnosis) == convalescent && diagnosis == convalescent)
         || (next(diagnosis) == observation  && diagnosis == observation)
         || (next(diagnosis) == ill          && diagnosis == ill)
         || (next(diagnosis) == critical     && diagnosis == critical) ) -> one;
    case diag_streak == one -> two;
    default -> many;
  }

  // Protocol table: the prescription follows the fresh diagnosis, with one
  // escalation step for a persistent "ill" grade. Th5 is reserved and
  // never prescribed by this table.
  update therapy {
    case next(diagnosis) == healthy -> Th0;
    case next(diagnosis) == convalescent -> Th1;
    case next(diagnosis) == observation -> Th2;
    case next(diagnosis) == ill && next(diag_streak) == many -> Th4;
    case next(diagnosis) == ill -> Th3;
    default -> Th4;
  }

  // Home care is compatible only with Th0/Th1, which the therapy table
  // guarantees for the healthy and convalescent grades.
  update location {
    case next(diagnosis) == healthy || next(diagnosis) == convalescent -> home;
    case next(diagnosis) == critical -> icu;
    default -> ward;
  }

  output rx_therapy { default -> therapy; }
  output rx_location { default -> location; }
}
)bcn";

constexpr const char* kPatientModelSource = R"bcn(// Patient response network: the actual condition reacts to the therapy
// administered in the previous period, and the measured vitals reflect the
// actual condition.
//
// A therapy takes effect only after it has been administered for at least
// two consecutive periods; an adequate therapy improves the condition one
// grade per effect, an inadequate one leaves it unchanged. Recovery is
// absorbing.
model patient_model {
  input rx_therapy : { Th0, Th1, Th2, Th3, Th4, Th5 }
  input rx_location : { home, ward, icu }
  input bt_fb : { low, normal, high }
  input bp_fb : { low, normal, high }
  input hf_fb : { low, normal, high }

  state status : { healthy, convalescent, ill, critical } init convalescent
  state active_therapy : { Th0, Th1, Th2, Th3, Th4, Th5 } init Th0
  state therapy_streak : { one, two, many } init one
  state prev_bt : { low, normal, high } init normal
  state prev_bp : { low, normal, high } init normal
  state prev_hf : { low, normal, high } init normal

  output bt : { low, normal, high }
  output bp : { low, normal, high }
  output hf : { low, normal, high }

  update status {
    case status == healthy -> healthy;
    case status == convalescent && active_therapy != Th0
      && therapy_streak != one -> healthy;
    case status == ill
      && (active_therapy == Th3 || active_therapy == Th4 || active_therapy == Th5)
      && therapy_streak != one -> convalescent;
    case status == critical
      && (active_therapy == Th4 || active_therapy == Th5)
      && therapy_streak != one -> ill;
    default -> status;
  }

  update active_therapy { default -> rx_therapy; }

  update therapy_streak {
    case !( (next(active_therapy) == Th0 && active_therapy == Th0)
         || (next(active_therapy) == Th1 && active_therapy == Th1)
         || (next(active_therapy) == Th2 && active_therapy == Th2)
         || (next(active_therapy) == Th3 && active_therapy == Th3)
         || (next(active_therapy) == Th4 && active_therapy == Th4)
         || (next(active_therapy) == Th5 && active_therapy == Th5) ) -> one;
    case therapy_streak == one -> two;
    default -> many;
  }

  update prev_bt { default -> bt_fb; }
  update prev_bp { default -> bp_fb; }
  update prev_hf { default -> hf_fb; }

  // Measured vitals as a signature of the actual condition: the number of
  // out-of-range vitals equals the severity grade.
  output bt {
    case status == healthy -> normal;
    case status == convalescent -> low;
    default -> high;
  }
  output bp {
    case status == healthy || status == convalescent -> normal;
    default -> high;
  }
  output hf {
    case status == critical -> high;
    default -> normal;
  }
}
)bcn";

const char* kCorrectDiagnosisPredicate =
    "(status == healthy && diagnosis == healthy)"
    " || (status == convalescent && diagnosis == convalescent)"
    " || (status == ill && diagnosis == ill)"
    " || (status == critical && diagnosis == critical)";

const char* kHealthyPredicate = "status == healthy && diagnosis == healthy";

int severity(const std::string& bt, const std::string& bp,
             const std::string& hf) {
  return (bt != "normal") + (bp != "normal") + (hf != "normal");
}

}  // namespace

const char* patient_context_source() { return kPatientContextSource; }
const char* patient_model_source() { return kPatientModelSource; }

std::string triage(const std::string& bt, const std::string& bp,
                   const std::string& hf) {
  switch (severity(bt, bp, hf)) {
    case 0: return "healthy";
    case 1: return "observation";  // one stray vital: watch before treating
    case 2: return "ill";
    default: return "critical";
  }
}

CaseStudy load_case_study(int threads) {
  CaseStudy cs{
      dsl::compile(dsl::parse(kPatientContextSource), threads),
      dsl::compile(dsl::parse(kPatientModelSource), threads),
      DiagnosisSpec{"status",
                    "diagnosis",
                    {{"healthy", "healthy"},
                     {"convalescent", "convalescent"},
                     {"ill", "ill"},
                     {"critical", "critical"}},
                    "healthy",
                    "healthy"},
      SetExpr::parse(kCorrectDiagnosisPredicate),
      SetExpr::parse(kHealthyPredicate),
      {},
      {
          "The rule tables are an example instantiation; the published "
          "construction fixes dimensions and structure but no numeric "
          "tables.",
          "The estimation table never assigns the observation grade; it "
          "only enters through triage.",
          "Th5 and the output pairs (Th2..Th5, home) are never emitted by "
          "the prescription table; all 18 therapy/location outputs are "
          "nevertheless kept in the output space.",
          "The severity grading of a reading counts out-of-range vitals; "
          "the published input table follows a 3x3x3 enumeration whose "
          "rows 10-12 repeat rows 1-3 verbatim, which is reproduced here "
          "as an enumeration over all 27 combinations rather than "
          "corrected.",
          "Deterministic recovery: an adequate therapy held for two "
          "periods always improves the condition one grade, and a "
          "recovered patient stays recovered; death is not modeled.",
      },
  };
  const std::vector<std::string> grades = {"low", "normal", "high"};
  for (const auto& bt : grades) {
    for (const auto& bp : grades) {
      for (const auto& hf : grades) {
        cs.triage.push_back({{bt, bp, hf}, triage(bt, bp, hf)});
      }
    }
  }
  return cs;
}

CanonicalVector initial_context_state(const CaseStudy& cs,
                                      const CanonicalVector& first_reading) {
  const auto reading = cs.context.input_space.decode(first_reading);
  std::vector<std::string> labels;
  const dsl::ModelAst ast = dsl::parse(kPatientContextSource);
  for (const auto& decl : ast.decls) {
    if (decl.kind != dsl::VarKind::State) continue;
    labels.push_back(decl.name == "diagnosis"
                         ? triage(reading[0], reading[1], reading[2])
                         : *decl.init);
  }
  return cs.context.state_space.encode(labels);
}

Bn make_mutant(const ClosedLoop& loop, const DiagnosisSpec& spec) {
  const StateSet correct = correct_diagnosis_set(loop, spec);
  Index victim = 0;
  for (Index v = 1; v <= loop.transition.cols(); ++v) {
    if (!correct.contains(v)) {
      victim = v;
      break;
    }
  }
  if (victim == 0) {
    throw DomainError("every combined state is a correct diagnosis");
  }
  std::vector<Index> cols(loop.transition.col_index().begin(),
                          loop.transition.col_index().end());
  cols[static_cast<std::size_t>(victim - 1)] = victim;
  Bn mutant = loop.as_bn();
  mutant.name += "_mutant";
  mutant.transition = LogicalMatrix(loop.transition.rows(), std::move(cols));
  return mutant;
}

}  // namespace bcn::casestudy
