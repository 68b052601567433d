// sdr-fixtures — regenerate the synthetic fixture images. The outputs are
// deterministic, so the committed files under assets/fixtures can always be
// reproduced byte-for-byte.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sdr/fixtures.hpp"
#include "sdr/image.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Regenerate the synthetic silhouette fixtures"};
    std::string out = "assets/fixtures";
    int resolution = 256;
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--resolution", resolution, "Raster size for the object silhouettes")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(out);
        for (const sdr::FixtureShape& shape : sdr::fixture_shapes()) {
            if (shape.name == "gauge") {
                // The resolution-independence shape ships at two sizes.
                for (int res : {128, 512}) {
                    const fs::path path =
                        fs::path(out) / ("gauge_" + std::to_string(res) + ".pgm");
                    sdr::write_pgm(path, sdr::render_fixture(shape, res));
                    std::cerr << "wrote " << path.string() << "\n";
                }
            } else {
                const fs::path path = fs::path(out) / (shape.name + ".pgm");
                sdr::write_pgm(path, sdr::render_fixture(shape, resolution));
                std::cerr << "wrote " << path.string() << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
