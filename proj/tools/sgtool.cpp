#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "supergluing/errors.hpp"
#include "supergluing/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Check gluing data of supermanifolds and their families"};
    std::string command, format = "text", at, lambda;
    sg::RunConfig cfg;
    std::optional<int> lo, hi, level;
    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(sg::command_names()));
    app.add_option("--input,-i", cfg.input, "Model file")->required();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", cfg.seed, "Seed for sampled base points");
    app.add_option("--window-lo", lo, "Lowest exponent for cohomology windows");
    app.add_option("--window-hi", hi, "Highest exponent for cohomology windows");
    app.add_option("--level", level, "Obstruction level");
    app.add_option("--at", at, "Base point, e.g. t=1/2");
    app.add_option("--lambda", lambda, "Scaling parameter (rational)");
    app.add_option("--output,-o", cfg.output, "Write emitted model data to this file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(sg::ExitCode::input_error);
    }
    cfg.command = command;
    cfg.structured = format == "structured";
    cfg.level = level;
    try {
        if (lo || hi) {
            if (!lo || !hi || *lo > *hi) throw sg::InvalidInput("--window-lo and --window-hi must both be given with lo <= hi");
            cfg.window = sg::Window{*lo, *hi};
        }
        if (!lambda.empty()) cfg.lambda = sg::q_parse(lambda);
        if (!at.empty()) {
            std::vector<sg::Q> point;
            std::size_t start = 0;
            while (start <= at.size()) {
                const std::size_t comma = std::min(at.find(',', start), at.size());
                std::string piece = at.substr(start, comma - start);
                if (const auto eq = piece.find('='); eq != std::string::npos) piece = piece.substr(eq + 1);
                point.push_back(sg::q_parse(piece));
                start = comma + 1;
            }
            cfg.at = point;
        }
    } catch (const sg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(sg::ExitCode::input_error);
    }
    return sg::run(cfg, std::cout, std::cerr);
}
