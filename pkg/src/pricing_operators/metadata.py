# Output layout kept apart from the operators so it can be inspected without importing the
# numerical tree.

SURFACE_FILE = "surface.csv"
FRONT_FILE = "front.csv"
SUMMARY_FILE = "summary.json"
TABLEAU_FILE = "tableau.csv"
EXTRAPOLATION_FILE = "extrapolation.json"
REFINEMENT_FILE = "refinement.json"
STABILITY_FILE = "stability.csv"
STABILITY_SUMMARY_FILE = "stability.json"
FRONT_LEVELS_FILE = "front_levels.csv"
PRICES_FILE = "prices.csv"
BOUNDARY_FILE = "boundary.csv"

SURFACE_COLUMNS = ["n", "tau", "j", "x", "p"]
FRONT_COLUMNS = ["n", "tau", "S_f"]
STABILITY_COLUMNS = ["mu", "N", "k_dx", "modulus"]
PRICE_COLUMNS = ["S", "price"]
REFERENCE_COLUMNS = ["true", "pm", "em", "emr"]
BOUNDARY_COLUMNS = ["x_inf", "J", "N", "S_f"]


def errors_file(level: int) -> str:
    return f"errors_g{level}.csv"
