"""One-off generator for the embedded preset JSON files (dev helper)."""
import json
import pathlib

OUT = pathlib.Path("src/drama_lab/presets")
OUT.mkdir(parents=True, exist_ok=True)

RECONSTRUCTED = (
    "row_bits and column_bits are reconstructed from the documented byte/column/"
    "channel/bank/row bit layout; only the addressing functions were measured."
)


def preset(name, bus, functions, row_bits, column_bits, notes=RECONSTRUCTED):
    return {
        "name": name,
        "bus_width_bits": bus,
        "functions": [{"label": lbl, "bits": bits} for lbl, bits in functions],
        "row_bits": row_bits,
        "column_bits": column_bits,
        "notes": notes,
    }


def r(a, b):
    return list(range(a, b + 1))


PRESETS = [
    # DDR3 table: BA0 BA1 BA2 Rank DIMM Channel, reordered to selector-first.
    preset(
        "sandybridge_ddr3_1ch", 64,
        [("Rank", [16]), ("BA0", [13, 17]), ("BA1", [14, 18]), ("BA2", [15, 19])],
        r(17, 30), r(3, 12),
    ),
    preset(
        "sandybridge_ddr3_2ch", 64,
        [("Channel", [6]), ("Rank", [17]),
         ("BA0", [14, 18]), ("BA1", [15, 19]), ("BA2", [16, 20])],
        r(18, 31), [3, 4, 5, 7, 8, 9, 10, 11, 12, 13],
    ),
    preset(
        "ivyhaswell_ddr3_1ch", 64,
        [("Rank", [15, 19]), ("BA0", [13, 17]), ("BA1", [14, 18]), ("BA2", [16, 20])],
        r(17, 30), r(3, 12),
    ),
    preset(
        "ivyhaswell_ddr3_1ch2d", 64,
        [("DIMM", [15]), ("Rank", [16, 20]),
         ("BA0", [13, 18]), ("BA1", [14, 19]), ("BA2", [17, 21])],
        r(18, 31), r(3, 12),
    ),
    preset(
        "ivyhaswell_ddr3_2ch", 64,
        [("Channel", [7, 8, 9, 12, 13, 18, 19]), ("Rank", [16, 20]),
         ("BA0", [14, 18]), ("BA1", [15, 19]), ("BA2", [17, 21])],
        r(18, 31), [3, 4, 5, 6, 8, 9, 10, 11, 12, 13],
    ),
    preset(
        "ivyhaswell_ddr3_2ch2d", 64,
        [("Channel", [7, 8, 9, 12, 13, 18, 19]), ("DIMM", [16]), ("Rank", [17, 21]),
         ("BA0", [14, 19]), ("BA1", [15, 20]), ("BA2", [18, 22])],
        r(19, 32), [3, 4, 5, 6, 8, 9, 10, 11, 12, 13],
    ),
    # DDR4 table: BG0 BG1 BA0 BA1 Rank CPU Channel.
    preset(
        "skylake_ddr4_2ch", 64,
        [("Channel", [8, 9, 12, 13, 18, 19]), ("Rank", [16, 20]),
         ("BG0", [7, 14]), ("BG1", [15, 19]), ("BA0", [17, 21]), ("BA1", [18, 22])],
        r(19, 32), [3, 4, 5, 6, 8, 9, 10, 11, 12, 13],
    ),
    preset(
        "haswell_ep_interleaved_1ch", 64,
        [("CPU", [7, 17]), ("Rank", [14]),
         ("BG0", [6, 22]), ("BG1", [19, 23]), ("BA0", [20, 24]), ("BA1", [21, 25])],
        [16, 17, 18] + r(22, 32), [3, 4, 5, 8, 9, 10, 11, 12, 13, 15],
    ),
    preset(
        "haswell_ep_interleaved_2ch", 64,
        [("CPU", [7, 17]), ("Channel", [8, 12, 14, 16, 18, 20, 22, 24, 26]),
         ("Rank", [15]),
         ("BG0", [6, 23]), ("BG1", [20, 24]), ("BA0", [21, 25]), ("BA1", [22, 26])],
        [17, 18, 19] + r(23, 33), [3, 4, 5, 8, 9, 10, 11, 12, 13, 14],
    ),
    preset(
        "haswell_ep_noninterleaved_1ch", 64,
        [("Rank", [13]),
         ("BG0", [6, 21]), ("BG1", [18, 22]), ("BA0", [19, 23]), ("BA1", [20, 24])],
        [15, 16, 17] + r(21, 31), [3, 4, 5, 7, 8, 9, 10, 11, 12, 14],
    ),
    preset(
        "haswell_ep_noninterleaved_2ch", 64,
        [("Channel", [7, 12, 14, 16, 18, 20, 22, 24, 26]), ("Rank", [14]),
         ("BG0", [6, 22]), ("BG1", [19, 23]), ("BA0", [20, 24]), ("BA1", [21, 25])],
        [16, 17, 18] + r(22, 32), [3, 4, 5, 8, 9, 10, 11, 12, 13, 15],
    ),
    # LPDDR table: BA0 BA1 BA2 Rank Channel; 32-bit bus, 2 byte-index bits.
    preset(
        "snapdragon_s4", 32,
        [("Rank", [10]), ("BA0", [13]), ("BA1", [14]), ("BA2", [15])],
        r(16, 29), [2, 3, 4, 5, 6, 7, 8, 9, 11, 12],
    ),
    preset(
        "exynos5", 32,
        [("Rank", [7]), ("BA0", [13]), ("BA1", [14]), ("BA2", [15])],
        r(16, 29), [2, 3, 4, 5, 6, 8, 9, 10, 11, 12],
    ),
    preset(
        "snapdragon_800", 32,
        [("Rank", [10]), ("BA0", [13]), ("BA1", [14]), ("BA2", [15])],
        r(16, 29), [2, 3, 4, 5, 6, 7, 8, 9, 11, 12],
    ),
    preset(
        "exynos7420", 32,
        [("Channel", [7, 12]), ("Rank", [8, 13]),
         ("BA0", [14]), ("BA1", [15]), ("BA2", [16])],
        [12, 13] + r(17, 28), r(2, 11),
    ),
]

for doc in PRESETS:
    path = OUT / f"{doc['name']}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", path)
