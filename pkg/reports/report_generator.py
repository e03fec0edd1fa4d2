import csv
import io
import json
from pathlib import Path


def flatten(data, prefix=""):
    """Nested dicts to dotted keys; lists are kept as compact JSON strings."""
    flat = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(value, separators=(",", ":"))
        else:
            flat[name] = value
    return flat


class ReportGenerator:
    def __init__(self, fmt, run_config=None):
        self.format = fmt
        self.run_config = run_config

    def render(self, command, result, rows=None):
        """Render one command result; ``rows`` are the CSV records (one per N, suite or vector)."""
        if self.format == "json":
            return self._json(command, result)
        if self.format == "csv":
            return self._csv(result, rows)
        return self._pretty(command, result)

    def _json(self, command, result):
        payload = {"command": command, "result": result}
        if self.run_config is not None:
            payload["config"] = self.run_config.to_dict()
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)

    def _csv(self, result, rows):
        records = [flatten(row) for row in rows] if rows else [flatten(result)]
        columns = []
        for record in records:
            columns.extend(key for key in record if key not in columns)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buffer.getvalue()

    def _pretty(self, command, result):
        lines = [f"## {command}", ""]
        lines.extend(self._pretty_lines(result, 0))
        return "\n".join(lines) + "\n"

    def _pretty_lines(self, data, depth):
        indent = "  " * depth
        lines = []
        for key, value in data.items():
            if isinstance(value, dict):
                lines.append(f"{indent}- {key}:")
                lines.extend(self._pretty_lines(value, depth + 1))
            elif isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"{indent}- {key}: {len(value)} entries")
                for i, item in enumerate(value[:20]):
                    lines.append(f"{indent}  [{i}]")
                    lines.extend(self._pretty_lines(item, depth + 2))
                if len(value) > 20:
                    lines.append(f"{indent}  ... and {len(value) - 20} more")
            elif isinstance(value, float):
                lines.append(f"{indent}- {key}: {value:.12g}")
            else:
                lines.append(f"{indent}- {key}: {value}")
        return lines

    def write(self, text, output=None):
        if output:
            path = Path(output)
            path.write_text(text, encoding="utf-8")
            return path
        print(text, end="" if text.endswith("\n") else "\n")
        return None
