#include "mdendro/mdendro.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "mdendro/agglomerate.hpp"
#include "mdendro/error.hpp"
#include "mdendro/records.hpp"
#include "mdendro/render.hpp"

struct mdendro_matrix {
  mdendro::ProximityMatrix m;
};

struct mdendro_result {
  mdendro::MultivaluedTree tree;
  mdendro::MergeTrace trace;
  std::vector<mdendro::ReversalReport> reversals;
  std::vector<std::string> warnings;
};

struct mdendro_tree_set {
  std::vector<mdendro::ValuedTree> trees;
};

namespace {

thread_local std::string last_error;

mdendro_status status_of(mdendro::ErrorCode code) {
  using mdendro::ErrorCode;
  switch (code) {
    case ErrorCode::parse_error: return MDENDRO_E_PARSE;
    case ErrorCode::asymmetric_input: return MDENDRO_E_ASYMMETRIC_INPUT;
    case ErrorCode::missing_pair: return MDENDRO_E_MISSING_PAIR;
    case ErrorCode::duplicate_pair: return MDENDRO_E_DUPLICATE_PAIR;
    case ErrorCode::negative_value: return MDENDRO_E_NEGATIVE_VALUE;
    case ErrorCode::duplicate_label: return MDENDRO_E_DUPLICATE_LABEL;
    case ErrorCode::out_of_range: return MDENDRO_E_OUT_OF_RANGE;
    case ErrorCode::missing_distance: return MDENDRO_E_MISSING_DISTANCE;
    case ErrorCode::invalid_alpha: return MDENDRO_E_INVALID_ALPHA;
    case ErrorCode::unsupported_method: return MDENDRO_E_UNSUPPORTED_METHOD;
    case ErrorCode::dimension_mismatch: return MDENDRO_E_DIMENSION_MISMATCH;
    case ErrorCode::empty_input: return MDENDRO_E_EMPTY_INPUT;
    case ErrorCode::policy_unavailable: return MDENDRO_E_POLICY_UNAVAILABLE;
    case ErrorCode::too_many_solutions: return MDENDRO_E_TOO_MANY_SOLUTIONS;
    case ErrorCode::unresolved_heights: return MDENDRO_E_UNRESOLVED_HEIGHTS;
    case ErrorCode::invalid_argument: return MDENDRO_E_INVALID_ARGUMENT;
    case ErrorCode::io_error: return MDENDRO_E_IO;
  }
  return MDENDRO_E_INTERNAL;
}

mdendro_status fail(mdendro_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
mdendro_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MDENDRO_OK;
  } catch (const mdendro::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MDENDRO_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MDENDRO_E_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw mdendro::Error(mdendro::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mdendro::MethodSpec method_spec(const char* name, double alpha) {
  using mdendro::Error;
  using mdendro::ErrorCode;
  require(name, "method");
  const auto kind = mdendro::parse_method(name);
  if (!kind) throw Error(ErrorCode::unsupported_method, std::string("unknown method '") + name + "'");
  auto spec = mdendro::MethodSpec::of(*kind);
  const bool alpha_set = !std::isnan(alpha) && alpha > 0.0;
  if (alpha_set) {
    if (*kind != mdendro::Method::joint_between_within) {
      throw Error(ErrorCode::invalid_alpha, "alpha only applies to joint_between_within");
    }
    spec.alpha = alpha;
  } else if (!std::isnan(alpha) && alpha != 0.0) {
    throw Error(ErrorCode::invalid_alpha, "alpha must lie in (0, 2]");
  }
  spec.validate();
  return spec;
}

mdendro::MatrixFormat matrix_format(const char* name) {
  require(name, "format");
  const auto f = mdendro::parse_matrix_format(name);
  if (!f) {
    throw mdendro::Error(mdendro::ErrorCode::invalid_argument,
                         std::string("unknown matrix format '") + name + "'");
  }
  return *f;
}

}  // namespace

extern "C" {

const char* mdendro_status_name(mdendro_status status) {
  switch (status) {
    case MDENDRO_OK: return "Ok";
    case MDENDRO_E_PARSE: return "ParseError";
    case MDENDRO_E_ASYMMETRIC_INPUT: return "AsymmetricInput";
    case MDENDRO_E_MISSING_PAIR: return "MissingPair";
    case MDENDRO_E_DUPLICATE_PAIR: return "DuplicatePair";
    case MDENDRO_E_NEGATIVE_VALUE: return "NegativeValue";
    case MDENDRO_E_DUPLICATE_LABEL: return "DuplicateLabel";
    case MDENDRO_E_OUT_OF_RANGE: return "OutOfRange";
    case MDENDRO_E_MISSING_DISTANCE: return "MissingDistance";
    case MDENDRO_E_INVALID_ALPHA: return "InvalidAlpha";
    case MDENDRO_E_UNSUPPORTED_METHOD: return "UnsupportedMethod";
    case MDENDRO_E_DIMENSION_MISMATCH: return "DimensionMismatch";
    case MDENDRO_E_EMPTY_INPUT: return "EmptyInput";
    case MDENDRO_E_POLICY_UNAVAILABLE: return "PolicyUnavailable";
    case MDENDRO_E_TOO_MANY_SOLUTIONS: return "TooManySolutions";
    case MDENDRO_E_UNRESOLVED_HEIGHTS: return "UnresolvedHeights";
    case MDENDRO_E_INVALID_ARGUMENT: return "InvalidArgument";
    case MDENDRO_E_IO: return "IoError";
    case MDENDRO_E_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* mdendro_last_error(void) { return last_error.c_str(); }

void mdendro_string_free(char* s) { std::free(s); }

mdendro_status mdendro_matrix_parse(const char* text, const char* format, mdendro_matrix** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    const auto f = matrix_format(format);
    *out = new mdendro_matrix{mdendro::parse_matrix(text, f)};
  });
}

mdendro_status mdendro_matrix_similarity(const mdendro_matrix* m, mdendro_matrix** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = new mdendro_matrix{mdendro::similarity_to_dissimilarity(m->m)};
  });
}

mdendro_status mdendro_matrix_round(const mdendro_matrix* m, int places, mdendro_matrix** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = new mdendro_matrix{mdendro::round_to_precision(m->m, places)};
  });
}

mdendro_status mdendro_matrix_serialize(const mdendro_matrix* m, const char* format, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = dup(mdendro::serialize_matrix(m->m, matrix_format(format)));
  });
}

size_t mdendro_matrix_size(const mdendro_matrix* m) { return m ? m->m.size() : 0; }

int mdendro_matrix_precision(const mdendro_matrix* m) {
  return m && m->m.precision() ? *m->m.precision() : -1;
}

void mdendro_matrix_free(mdendro_matrix* m) { delete m; }

mdendro_status mdendro_cluster(const mdendro_matrix* m, const char* method, double alpha,
                               const char* policy, mdendro_result** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    require(policy, "policy");
    const auto spec = method_spec(method, alpha);
    const auto p = mdendro::parse_fusion_policy(policy);
    if (!p) {
      throw mdendro::Error(mdendro::ErrorCode::invalid_argument,
                           std::string("unknown policy '") + policy + "'");
    }
    auto res = mdendro::cluster_variable_group(m->m, spec, *p);
    *out = new mdendro_result{std::move(res.tree), std::move(res.trace), std::move(res.reversals),
                              std::move(res.warnings)};
  });
}

mdendro_status mdendro_cluster_pair_group(const mdendro_matrix* m, const char* method,
                                          double alpha, const char* tiebreak, uint64_t seed,
                                          mdendro_result** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    require(tiebreak, "tiebreak");
    const auto spec = method_spec(method, alpha);
    const auto tb = mdendro::parse_tiebreak(tiebreak);
    if (!tb) {
      throw mdendro::Error(mdendro::ErrorCode::invalid_argument,
                           std::string("unknown tiebreak '") + tiebreak + "'");
    }
    auto tree = mdendro::cluster_pair_group(m->m, spec, *tb, seed);
    auto reversals = mdendro::detect_reversals(tree);
    *out = new mdendro_result{std::move(tree), {}, std::move(reversals), {}};
  });
}

mdendro_status mdendro_result_render(const mdendro_result* r, const char* kind, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    require(kind, "kind");
    const std::string k = kind;
    if (k == "newick") {
      *out = dup(mdendro::to_newick(r->tree) + "\n");
    } else if (k == "records") {
      *out = dup(mdendro::to_records(r->tree, r->trace, r->warnings));
    } else if (k == "text") {
      *out = dup(mdendro::render_text(r->tree));
    } else if (k == "svg") {
      *out = dup(mdendro::render_svg(r->tree));
    } else {
      throw mdendro::Error(mdendro::ErrorCode::invalid_argument, "unknown output kind '" + k + "'");
    }
  });
}

int mdendro_result_has_reversals(const mdendro_result* r) {
  return r && !r->reversals.empty() ? 1 : 0;
}

size_t mdendro_result_warning_count(const mdendro_result* r) { return r ? r->warnings.size() : 0; }

const char* mdendro_result_warning(const mdendro_result* r, size_t i) {
  if (!r || i >= r->warnings.size()) return nullptr;
  return r->warnings[i].c_str();
}

void mdendro_result_free(mdendro_result* r) { delete r; }

mdendro_status mdendro_enumerate(const mdendro_matrix* m, const char* method, double alpha,
                                 size_t limit, mdendro_tree_set** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    const auto spec = method_spec(method, alpha);
    *out = new mdendro_tree_set{mdendro::enumerate_pair_group(
        m->m, spec, limit == 0 ? mdendro::kDefaultEnumerationLimit : limit)};
  });
}

size_t mdendro_tree_set_count(const mdendro_tree_set* s) { return s ? s->trees.size() : 0; }

mdendro_status mdendro_tree_set_newick(const mdendro_tree_set* s, size_t i, char** out) {
  return guarded([&] {
    require(s, "tree set");
    require(out, "out");
    if (i >= s->trees.size()) {
      throw mdendro::Error(mdendro::ErrorCode::out_of_range, "tree index out of range");
    }
    *out = dup(mdendro::to_newick(s->trees[i]));
  });
}

void mdendro_tree_set_free(mdendro_tree_set* s) { delete s; }

}  // extern "C"
