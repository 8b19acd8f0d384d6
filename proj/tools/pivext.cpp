#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pivext/pivext.hpp"

namespace {

using pivext::json;

struct flags {
    std::string format = "json";
    std::string group, subgroup, character, coefficients = "kx", bichar = "standard", tau = "+", phi, module;
    std::string alpha;
    int degree = 2;
    int order = 0;
    std::int64_t level = 0;
    bool reduced_h1 = false;
    std::string file;
    std::vector<std::string> files;
};

json coefficients_json(const std::string& text)
{
    if (text == "kx")
        return "kx";
    const auto colon = text.find(':');
    const auto kind = text.substr(0, colon);
    const auto rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (kind == "mu")
        return json{{"mu", pivext::detail::parse_int(rest, "--coefficients")}};
    if (kind == "trivial") {
        json factors = json::array();
        if (!rest.empty())
            for (auto& f : pivext::detail::split_top(rest))
                factors.push_back(pivext::detail::parse_int(f, "--coefficients"));
        return json{{"trivial", factors}};
    }
    if (kind == "conj" || kind == "inv")
        return json{{kind == "conj" ? "conj_character" : "inv_center", json{{"subgroup", rest}}}};
    throw pivext::error(pivext::errc::schema_error,
                        "--coefficients: expected kx, mu:N, trivial:d1,d2, conj:<labels> or inv:<labels>");
}

json parse_json_flag(const std::string& text, const std::string& name)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        throw pivext::error(pivext::errc::schema_error, name + ": malformed JSON");
    }
}

json build_problem(const std::string& command, const flags& f)
{
    json p{{"command", command}};
    if (command == "extend-character") {
        p["group"] = f.group;
        p["subgroup"] = f.subgroup;
        p["character"] = f.character;
    } else if (command == "cohomology") {
        p["group"] = f.group;
        p["degree"] = f.degree;
        p["coefficients"] = coefficients_json(f.coefficients);
        if (f.reduced_h1)
            p["reduced_h1"] = true;
    } else if (command == "ty") {
        if (f.order > 0)
            p["order"] = f.order;
        else
            p["group"] = f.group;
        p["bichar"] = f.bichar == "standard" ? json("standard") : parse_json_flag(f.bichar, "--bichar");
        p["tau"] = f.tau;
        if (!f.phi.empty())
            p["phi"] = f.phi;
    } else if (command == "picard") {
        p["group"] = f.group;
        if (!f.phi.empty())
            p["phi"] = f.phi;
    } else if (command == "les") {
        p["group"] = f.group;
        if (!f.subgroup.empty())
            p["subgroup"] = f.subgroup;
        if (!f.module.empty())
            p["module"] = coefficients_json(f.module);
        if (!f.alpha.empty())
            p["alpha"] = parse_json_flag(f.alpha, "--alpha");
    } else if (command == "module-pivotal") {
        p["group"] = f.group;
        p["phi"] = f.phi;
        p["subgroup"] = f.subgroup;
    }
    json options{{"format", f.format}};
    if (f.level > 0)
        options["level"] = f.level;
    p["options"] = options;
    return p;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pivotal structures on graded extensions of pointed fusion categories"};
    app.require_subcommand(1);
    app.fallthrough();
    flags f;
    app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto* ext = app.add_subcommand("extend-character", "Obstructions O1, O2 and all extensions of a character");
    ext->add_option("--group", f.group, "Group spec, e.g. dihedral:8")->required();
    ext->add_option("--subgroup", f.subgroup, "Comma-separated generator labels of C")->required();
    ext->add_option("--character", f.character, "Values of chi on the subgroup generators")->required();
    ext->add_option("--level", f.level, "Coefficient level N of the O2 triviality test");

    auto* coh = app.add_subcommand("cohomology", "H^n(G, M) for n = 1, 2, 3");
    coh->add_option("--group", f.group, "Group spec")->required();
    coh->add_option("--degree", f.degree, "Degree n")->required();
    coh->add_option("--coefficients", f.coefficients, "kx, mu:N, trivial:d1,d2, conj:<labels> or inv:<labels>");
    coh->add_flag("--reduced-h1", f.reduced_h1, "Also list a basis of crossed homomorphisms");

    auto* ty = app.add_subcommand("ty", "Pivotal extensions of Vec_A to a Tambara-Yamagami category");
    ty->add_option("--order", f.order, "A = Z/n");
    ty->add_option("--group", f.group, "A as an abelian group spec");
    ty->add_option("--bichar", f.bichar, "standard, or a JSON matrix of fractions");
    ty->add_option("--tau", f.tau, "Sign of tau")->check(CLI::IsMember({"+", "-"}));
    ty->add_option("--phi", f.phi, "Pivotal structure on Vec_A, values on generators");

    auto* pic = app.add_subcommand("picard", "Orthogonal group of A x A^ and the stabilizer of Z_phi");
    pic->add_option("--group", f.group, "Abelian group spec")->required();
    pic->add_option("--phi", f.phi, "Values of phi on generators");

    auto* les = app.add_subcommand("les", "Group orders in the long exact sequence");
    les->add_option("--group", f.group, "Group spec D (or G with --module)")->required();
    auto* les_sub = les->add_option("--subgroup", f.subgroup, "Abelian normal subgroup C");
    les->add_option("--module", f.module, "Declared Inv(Z(C)) module over G, e.g. trivial:")->excludes(les_sub);
    les->add_option("--alpha", f.alpha, "3-cocycle on the module carrier as JSON");

    auto* mp = app.add_subcommand("module-pivotal", "Pivotal structures on the module category graded by G/H");
    mp->add_option("--group", f.group, "Abelian group spec")->required();
    mp->add_option("--phi", f.phi, "Values of phi on generators")->required();
    mp->add_option("--subgroup", f.subgroup, "Generators of H")->required();

    auto* run = app.add_subcommand("run", "Run a JSON problem file ('-' for stdin)");
    run->add_option("file", f.file, "Problem file")->required();

    auto* batch = app.add_subcommand("batch", "Run several problem files in parallel");
    batch->add_option("files", f.files, "Problem files")->required();

    auto* catalog = app.add_subcommand("catalog", "List the built-in groups");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "SchemaError"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    }

    try {
        if (catalog->parsed()) {
            json names = pivext::catalog_names();
            std::cout << pivext::render(json{{"catalog", names}}, f.format);
            return 0;
        }
        if (batch->parsed())
            return pivext::run_batch(f.files, f.format, std::cout);
        pivext::problem_file problem;
        if (run->parsed()) {
            if (f.file == "-")
                problem = pivext::parse_problem_text(std::string(std::istreambuf_iterator<char>(std::cin), {}), "<stdin>");
            else
                problem = pivext::parse_problem_file(f.file);
            if (app.get_option("--format")->count() > 0)
                problem.options.format = f.format;
        } else {
            problem = pivext::parse_problem(build_problem(app.get_subcommands().front()->get_name(), f));
        }
        return pivext::run_and_emit(problem, std::cout, std::cerr);
    } catch (const pivext::error& e) {
        std::cerr << pivext::error_json(e).dump() << "\n";
        return pivext::exit_code(e.code());
    }
}
