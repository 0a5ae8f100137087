#pragma once

#include "cat2/comma.hpp"

// Input parsing (a line-oriented DSL plus a JSON interchange format), task
// dispatch, deterministic report emission, and DOT export.

namespace cat2::shell {

using namespace cat2::comma;

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ClosureDiverged : std::runtime_error {
    explicit ClosureDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct TaskRecord {
    std::string op;
    std::map<std::string, std::string> args;     // name -> reference expression
    std::map<std::string, std::string> options;  // flavor, variant, caps...

    bool operator==(const TaskRecord&) const = default;
};

// Declarations are kept name-sorted (parse canonicalizes), tasks in source
// order. Names are unique across all declaration kinds.
struct Document {
    std::vector<std::pair<std::string, FiniteCategory>> categories;
    std::vector<std::pair<std::string, Finite2Category>> two_categories;
    std::vector<std::pair<std::string, CatValued2Functor>> diagrams;
    std::vector<std::pair<std::string, Transformation>> transformations;
    std::vector<std::pair<std::string, Marking>> markings;
    std::vector<TaskRecord> tasks;

    bool operator==(const Document&) const = default;
};

// Detects the format by the first non-space character ('{' selects JSON).
// Free presentations in the DSL are closed under composition by relation
// rewriting before kernel construction; the closure is capped by
// limits.max_morphisms and throws ClosureDiverged beyond it.
Document parse(const std::string& text, const Limits& limits = {});
// Canonical JSON emission: top-level keys "categories", "two_categories",
// "diagrams", "transformations", "markings", "tasks"; arrays name-sorted;
// all composition tables explicit. parse(serialize(d)) == d.
std::string serialize(const Document& doc);

struct TaskResult {
    std::string op;
    bool pass = true;
    std::vector<std::string> notes;
    std::vector<Violation> violations;
    std::string error;       // nonempty when the task itself failed to run
    double elapsed_ms = 0.0;

    bool operator==(const TaskResult&) const = default;
};

struct Report {
    bool pass = true;
    std::vector<TaskResult> tasks;

    bool operator==(const Report&) const = default;
};

struct RunConfig {
    Limits limits;
    bool timing = true;
    std::string dot_prefix;                      // when nonempty: write DOT files
    std::vector<FiniteCategory> probes;          // overrides the default probe family
    std::vector<Finite2Category> probe_2cats;    // ditto for 2-categorical probes
};

// Executes the tasks in order; per-task errors are captured in the report
// and never abort later tasks.
Report run(const Document& doc, const RunConfig& cfg = {});

// Deterministic rendering; the timing fields are omitted when with_timing is
// false, making repeated runs byte-identical.
std::string report_json(const Report& r, bool with_timing);

// DOT digraphs: objects as nodes, nonidentity 1-cells as edges (marked ones
// styled), 2-cells as labeled dashed edges between edge-midpoint anchors.
std::string export_dot(const std::string& name, const FiniteCategory& c);
std::string export_dot(const std::string& name, const Finite2Category& k,
                       const std::set<Id>& marked = {});
std::string export_dot(const std::string& name, const ElementsResult& e);

}  // namespace cat2::shell
