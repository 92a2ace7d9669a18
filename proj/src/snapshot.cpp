#include "mpflow/snapshot.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

namespace mpflow {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

void write_snapshot(const std::string& stem, double time,
                    const std::vector<std::pair<std::string, const ScalarField*>>& fields) {
    require(!fields.empty(), errc::invalid_argument, "write_snapshot: no fields");
    const TorusGrid& g = fields.front().second->grid();
    nlohmann::json header;
    header["n"] = g.n();
    header["length"] = g.length();
    header["time"] = time;
    header["endianness"] = "little";
    header["dtype"] = "float64";
    header["layout"] = "row-major";
    std::vector<std::string> names;
    for (const auto& [name, field] : fields) {
        require(field->grid().same_as(g), errc::invalid_argument, "write_snapshot: grid mismatch");
        names.push_back(name);
        const ScalarField phys = to_physical(*field);
        std::ofstream bin(stem + "." + name + ".bin", std::ios::binary);
        require(bin.good(), errc::io, "write_snapshot: cannot open " + stem + "." + name + ".bin");
        bin.write(reinterpret_cast<const char*>(phys.phys().data()),
                  std::streamsize(sizeof(double) * phys.phys().size()));
        require(bin.good(), errc::io, "write_snapshot: write failed for field " + name);
    }
    header["fields"] = names;
    std::ofstream out(stem + ".json");
    require(out.good(), errc::io, "write_snapshot: cannot open " + stem + ".json");
    out << header.dump(2) << "\n";
}

Snapshot read_snapshot(const std::string& stem) {
    std::ifstream in(stem + ".json");
    require(in.good(), errc::io, "read_snapshot: cannot open " + stem + ".json");
    nlohmann::json header = nlohmann::json::parse(in);
    Snapshot snap;
    snap.n = header.at("n").get<int>();
    snap.length = header.at("length").get<double>();
    snap.time = header.at("time").get<double>();
    snap.field_names = header.at("fields").get<std::vector<std::string>>();
    for (const auto& name : snap.field_names) {
        std::ifstream bin(stem + "." + name + ".bin", std::ios::binary);
        require(bin.good(), errc::io, "read_snapshot: cannot open field " + name);
        std::vector<double> data(std::size_t(snap.n) * snap.n);
        bin.read(reinterpret_cast<char*>(data.data()),
                 std::streamsize(sizeof(double) * data.size()));
        require(bin.gcount() == std::streamsize(sizeof(double) * data.size()), errc::io,
                "read_snapshot: short read for field " + name);
        snap.data.push_back(std::move(data));
    }
    return snap;
}

}  // namespace mpflow
