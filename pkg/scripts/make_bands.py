#!/usr/bin/env python3
"""Regenerate src/besovx/fixtures/bands.json from the reference corpus.

Run this only when a deliberate algorithm change moves the measured
constants; review the diff before committing."""

import json
from pathlib import Path

from besovx.verify import REFERENCE_SEED, measure_bands

out = Path(__file__).resolve().parents[1] / "src/besovx/fixtures/bands.json"
bands = measure_bands(seed=REFERENCE_SEED)
out.write_text(json.dumps(bands, indent=2, sort_keys=True) + "\n")
print(f"wrote {len(bands)} bands to {out}")
