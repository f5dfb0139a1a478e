#include <iostream>

#include <CLI11.hpp>

#include <idemcert/cli/commands.hpp>

using namespace idemcert;

int main(int argc, char **argv)
{
    CLI::App app{"Certified computations with idempotent matrices over presented rings"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    cli::Options opt;
    std::string format = "text";
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--effort", opt.effort, "Bound on certificate size in terms (0 = unbounded)");
    };

    std::string input;
    auto *analyze = app.add_subcommand("analyze", "Rank polynomial, idempotents and comaximal family of a projector");
    analyze->add_option("input", input, "Input document")->required();
    analyze->add_option("--max-exponent", opt.max_exponent, "Largest exponent tried in nilpotence searches");
    analyze->add_flag("--bases", opt.bases, "Compute bases of the localized images");
    add_common(analyze);

    std::size_t n = 0;
    std::string goal = "orthogonality";
    auto *generic = app.add_subcommand("generic", "Certificates for the generic projector of size n");
    generic->add_option("--n", n, "Matrix size")->required();
    generic->add_option("--goal", goal, "Certificate family")->check(CLI::IsMember({"orthogonality", "minors"}));
    generic->add_option("--output", opt.output, "Write the archive here instead of stdout");
    generic->add_option("--effort", opt.effort, "Bound on certificate size in terms (0 = unbounded)");

    auto *azumaya = app.add_subcommand("azumaya", "Evaluation tree with a local conjugation on each leaf");
    azumaya->add_option("input", input, "Input document")->required();
    add_common(azumaya);

    std::string cert_path, pres_path;
    auto *verify = app.add_subcommand("verify", "Check certificates by polynomial expansion");
    verify->add_option("cert", cert_path, "Certificate or archive")->required();
    verify->add_option("pres", pres_path, "Presentation document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::ParseFailed;
    }
    opt.format = format == "structured" ? cli::Format::Structured : cli::Format::Text;

    if (*analyze)
        return cli::cmd_analyze(input, opt, std::cout, std::cerr);
    if (*generic)
        return cli::cmd_generic(n, goal == "minors" ? cli::Goal::Minors : cli::Goal::Orthogonality, opt, std::cout,
                                std::cerr);
    if (*azumaya)
        return cli::cmd_azumaya(input, opt, std::cout, std::cerr);
    return cli::cmd_verify(cert_path, pres_path, std::cout, std::cerr);
}
