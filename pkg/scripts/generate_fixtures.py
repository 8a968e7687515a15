"""Regenerate the bundled demo datasets under src/ranklabel/fixtures/.

The fixtures are synthetic but shaped like the three demo domains: a small
CS-departments table (PubCount, Faculty, GRE, Region, plus DeptSizeBin from
a median split on Faculty), a 1000-row credit table, and a 6889-row criminal
risk table. Generation is seeded and the script asserts the properties the
test suite relies on, so committed CSVs only change when this file does.

Run from the repository root:  python scripts/generate_fixtures.py
"""

from __future__ import annotations

import csv
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "src" / "ranklabel" / "fixtures"
sys.path.insert(0, str(ROOT / "src"))


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path.relative_to(ROOT)} ({len(rows)} rows)")


def make_cs_departments() -> None:
    rng = random.Random(20180610)
    n = 51
    faculty = sorted(
        [rng.randint(12, 34) for _ in range(26)] + [rng.randint(36, 90) for _ in range(25)],
        reverse=True,
    )
    rng.shuffle(faculty)
    median = sorted(faculty)[n // 2]
    regions = ["NE", "MW", "SA", "SC", "W"]
    rows = []
    for i, fac in enumerate(faculty):
        # publication output scales with department size, with noise
        pub = round(fac * rng.uniform(1.6, 2.4) + rng.uniform(-8, 8), 2)
        gre = round(rng.uniform(782, 800), 1)
        size = "large" if fac > median else "small"
        rows.append([f"dept_{i:02d}", pub, fac, gre, rng.choice(regions), size])
    write_csv(
        FIXTURES / "cs_departments.csv",
        ["DeptName", "PubCount", "Faculty", "GRE", "Region", "DeptSizeBin"],
        rows,
    )


def make_german_credit() -> None:
    rng = random.Random(1000)
    purposes = ["car", "furniture", "radio_tv", "education", "business", "repairs"]
    rows = []
    for i in range(1000):
        duration = rng.choice([6, 9, 12, 15, 18, 24, 30, 36, 48, 60])
        amount = int(rng.lognormvariate(7.8, 0.75))
        age = min(75, max(19, int(rng.gauss(36, 11))))
        employment = round(max(0.0, rng.gauss(5.5, 4.0)), 1)
        if rng.random() < 0.01:
            employment = None
        sex = "female" if rng.random() < 0.31 else "male"
        housing = rng.choices(["own", "rent", "free"], weights=[71, 18, 11])[0]
        if rng.random() < 0.008:
            housing = None
        purpose = rng.choice(purposes)
        risk = "bad" if rng.random() < 0.3 else "good"
        rows.append(
            [
                i,
                duration,
                amount,
                age,
                "" if employment is None else employment,
                sex,
                "" if housing is None else housing,
                purpose,
                risk,
            ]
        )
    write_csv(
        FIXTURES / "german_credit.csv",
        [
            "applicant_id",
            "duration_months",
            "credit_amount",
            "age",
            "employment_years",
            "sex",
            "housing",
            "purpose",
            "risk",
        ],
        rows,
    )


def make_compas() -> None:
    rng = random.Random(6889)
    races = [
        ("African-American", 0.51),
        ("Caucasian", 0.34),
        ("Hispanic", 0.08),
        ("Other", 0.05),
        ("Asian", 0.01),
        ("Native American", 0.01),
    ]
    race_names = [r for r, _ in races]
    race_weights = [w for _, w in races]
    rows = []
    for i in range(6889):
        age = min(83, max(18, int(rng.lognormvariate(3.45, 0.33))))
        priors = min(38, int(rng.expovariate(0.28)))
        juv = min(6, int(rng.expovariate(1.8)))
        # risk score loosely tracks priors and youth
        base = 1.0 + 0.35 * priors + 0.9 * juv + (45 - age) * 0.06 + rng.gauss(0, 1.6)
        decile = min(10, max(1, round(base)))
        sex = "Female" if rng.random() < 0.19 else "Male"
        race = rng.choices(race_names, weights=race_weights)[0]
        if rng.random() < 0.002:
            race = "N/A"
        degree = "F" if rng.random() < 0.64 else "M"
        recid = 1 if rng.random() < min(0.9, 0.12 + 0.055 * decile) else 0
        rows.append([i, age, priors, juv, decile, sex, race, degree, recid])
    write_csv(
        FIXTURES / "compas.csv",
        [
            "person_id",
            "age",
            "priors_count",
            "juv_offense_count",
            "decile_score",
            "sex",
            "race",
            "charge_degree",
            "two_year_recid",
        ],
        rows,
    )


def check_properties() -> None:
    from ranklabel import ScoringSpec, build_ranking, load_csv

    cs = load_csv((FIXTURES / "cs_departments.csv").read_bytes())
    spec = ScoringSpec({"PubCount": 1.0, "GRE": 0.3}, "minmax")
    _, ranking = build_ranking(cs, spec, 10, require=["DeptSizeBin"])
    sizes = {cs.column("DeptSizeBin").values[i] for i in ranking.top_k}
    assert sizes == {"large"}, f"top-10 must be all large, got {sizes}"

    german = load_csv((FIXTURES / "german_credit.csv").read_bytes())
    assert german.row_count == 1000, german.row_count
    assert german.column("sex").kind == "categorical"
    assert len({v for v in german.column("sex").values if v is not None}) == 2

    compas = load_csv((FIXTURES / "compas.csv").read_bytes())
    assert compas.row_count == 6889, compas.row_count
    assert len({v for v in compas.column("sex").values if v is not None}) == 2
    assert compas.column("race").missing_count > 0
    print("fixture properties verified")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_cs_departments()
    make_german_credit()
    make_compas()
    check_properties()


if __name__ == "__main__":
    main()
