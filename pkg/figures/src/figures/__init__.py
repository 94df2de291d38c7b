"""Figure scripts for the forstergate simulation artifacts.

Each renderer consumes only the CLI's documented CSV/JSON files, so this
package has no dependency on the simulation library itself.
"""

__version__ = "1.0.0"

from .schema import SchemaError, load_scan_csv, load_trace_csv, load_truth_table_json

__all__ = ["SchemaError", "load_scan_csv", "load_trace_csv", "load_truth_table_json"]
