#include "cat2/shell.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite 2-category diagram toolkit"};
    app.require_subcommand(1);
    auto* rc = app.add_subcommand("run", "parse a document and execute its tasks");
    std::string in, out, dot, probes_file;
    long long maxm = -1, maxc = -1;
    bool no_timing = false;
    rc->add_option("--in", in, "input document (.json or .dsl)")->required();
    rc->add_option("--out", out, "report output path")->required();
    rc->add_option("--dot", dot, "prefix for DOT exports of declared entities");
    rc->add_option("--max-morphisms", maxm, "cap on closure and construction sizes");
    rc->add_option("--max-candidates", maxc, "cap on enumeration sizes");
    rc->add_option("--probes", probes_file, "document whose categories become the probe family");
    rc->add_flag("--no-timing", no_timing, "omit timing fields from the report");
    CLI11_PARSE(app, argc, argv);

    try {
        cat2::shell::RunConfig cfg;
        cfg.timing = !no_timing;
        cfg.dot_prefix = dot;
        if (maxm < 0)
            if (const char* env = std::getenv("CAT2_MAX_MORPHISMS")) maxm = std::atoll(env);
        if (maxm > 0) cfg.limits.max_morphisms = static_cast<std::size_t>(maxm);
        if (maxc > 0) cfg.limits.max_candidates = static_cast<std::size_t>(maxc);
        if (!probes_file.empty()) {
            cat2::shell::Document pd = cat2::shell::parse(slurp(probes_file), cfg.limits);
            for (const auto& [n, c] : pd.categories) cfg.probes.push_back(c);
            for (const auto& [n, k] : pd.two_categories) cfg.probe_2cats.push_back(k);
        }
        cat2::shell::Document doc = cat2::shell::parse(slurp(in), cfg.limits);
        cat2::shell::Report rep = cat2::shell::run(doc, cfg);
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        os << cat2::shell::report_json(rep, cfg.timing);
        return rep.pass ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
