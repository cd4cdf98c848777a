#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "neron/cli.hpp"

namespace {

int run_file(neron::InputKind kind, const std::string& path, const neron::Options& opts) {
    neron::Report rep;
    rep.kind = kind;
    rep.options = opts;
    try {
        std::ifstream in(path);
        if (!in) throw neron::Error(neron::ErrorCode::PARSE, "cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        neron::InputDocument doc = neron::parse_input(buf.str(), kind);
        rep = neron::run(doc, opts);
    } catch (const neron::Error& e) {
        rep.errors.push_back({e.code(), e.detail()});
    }
    std::cout << neron::render(rep);
    if (rep.options.format == "json") std::cout << "\n";
    return neron::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"component groups of degenerating abelian varieties from combinatorial data"};
    app.require_subcommand(1);

    std::string file;
    neron::Options opts;
    bool no_oracle = false;

    auto add = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("file", file, "JSON input document")->required();
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_flag("--strict", opts.strict, "treat validation warnings as errors");
        sub->add_flag("--no-oracle", no_oracle, "skip the independent invariants computation");
        return sub;
    };

    CLI::App* jac = add("jacobian", "component group from intersection data of a curve model");
    CLI::App* tor = add("torus", "component group from a character lattice with Galois action");
    CLI::App* semi = add("semistable", "component group from a uniformization pairing");

    CLI11_PARSE(app, argc, argv);
    opts.with_oracle = !no_oracle;

    neron::InputKind kind = neron::InputKind::jacobian;
    if (tor->parsed()) kind = neron::InputKind::torus;
    if (semi->parsed()) kind = neron::InputKind::semistable;
    (void)jac;
    return run_file(kind, file, opts);
}
