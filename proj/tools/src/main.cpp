#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

// Exit codes: 0 ok, 2 configuration or usage error, 3 numerical failure,
// 4 verification-suite failure.
int dispatch(int (*verb)(const reebtool::RunConfig&),
             const std::string& config_path) {
    try {
        return verb(reebtool::load_run_config(config_path));
    } catch (const reebdbar::CoverageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const reebdbar::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const reebdbar::TruncationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const reebdbar::ObstructionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const reebdbar::NotRemovableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Leafwise dbar decomposition on the contracted annulus quotient"};
    app.require_subcommand(1);

    std::string config_path;
    struct Verb {
        const char* name;
        const char* help;
        int (*fn)(const reebtool::RunConfig&);
    };
    const Verb verbs[] = {
        {"obstruction", "Class pairing of the input form", //
         &reebtool::cmd_obstruction},
        {"decompose", "Split the input into class part and primitive",
         &reebtool::cmd_decompose},
        {"verify", "Run the structural property suite", &reebtool::cmd_verify},
        {"dump-cutoffs", "Tabulate the plateau and shell profiles",
         &reebtool::cmd_dump_cutoffs},
    };
    for (const Verb& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("--config", config_path,
                        "JSON config file (defaults apply when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (const Verb& v : verbs)
        if (app.get_subcommand(v.name)->parsed()) return dispatch(v.fn, config_path);
    return 2;
}
