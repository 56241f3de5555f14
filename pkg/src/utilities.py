import datetime
import os

import pandas as pd

from src.fuzzing import DISPUTED_CELLS
from src.model import default_agent_names, default_object_names, distances, format_rational


class Utils:
    """Utility functions for printing and exporting results"""

    @staticmethod
    def matching_frame(matching, agents=None, objects=None):
        """A random matching as a DataFrame of "num/den" strings, agents as rows"""
        agents = list(agents or default_agent_names(matching.n))
        objects = list(objects or default_object_names(matching.n))
        rows = [[format_rational(x) for x in row] for row in matching.rows]
        return pd.DataFrame(rows, index=agents, columns=objects)

    @staticmethod
    def distance_frame(c, matching):
        """Per-agent distance from the ideal lottery"""
        return pd.DataFrame(
            {'distance': [format_rational(d) for d in distances(c, matching)]},
            index=list(c.agents),
        )

    @staticmethod
    def format_matching_output(c, matching, title=None):
        """Format a mechanism outcome for console output"""
        output = []
        if title:
            output.append(title)
        output.append(Utils.matching_frame(matching, c.agents, c.objects).to_string())
        output.append('')
        output.append(Utils.distance_frame(c, matching).to_string())
        return '\n'.join(output)

    @staticmethod
    def format_verdict(verdict):
        """One-paragraph summary of an AxiomVerdict"""
        mechanism = verdict.mechanism.label() if verdict.mechanism is not None else '-'
        output = [f"{verdict.property.label} / {mechanism}: {verdict.result.value.upper()}"]
        if verdict.note:
            output.append(verdict.note)
        witness = verdict.witness
        if witness is not None:
            c = witness.profile
            if witness.misreport is not None:
                output.append(
                    f"Agent {c.agents[witness.deviator]} reports "
                    f"({', '.join(format_rational(x) for x in witness.misreport)}) "
                    f"instead of ({', '.join(format_rational(x) for x in c[witness.deviator])})"
                )
            if witness.permutation is not None:
                output.append(f"Relabelling: {list(witness.permutation.mapping)}")
            if witness.before is not None:
                output.append(Utils.format_matching_output(c, witness.before, 'Before:'))
            if witness.after is not None:
                output.append(Utils.format_matching_output(c, witness.after, 'After:'))
            if witness.sample_seed is not None:
                output.append(f"Sample seed: {witness.sample_seed}")
        return '\n'.join(output)

    @staticmethod
    def format_table1(result):
        """Render a Table1Result with a line for each unexpected cell"""
        output = [result.to_frame().to_string()]
        for tag, prop, expected, actual in result.deviations():
            output.append(f"Unexpected: {tag} / {prop.label} is {actual.value}, expected {expected.value}")
        for tag, prop, expected, actual in result.disputed():
            output.append(
                f"Disputed: {tag} / {prop.label} is {actual.value}, expected {expected.value} "
                f"(see fixture {DISPUTED_CELLS[(tag, prop)]})"
            )
        return '\n'.join(output)

    @staticmethod
    def export_to_csv(frame, filename=None, prefix='table1'):
        """Export a DataFrame to CSV file"""
        if frame is None or frame.empty:
            print("Nothing to export")
            return None

        if filename is None:
            timestamp = datetime.datetime.now().strftime('%Y%m%d_%H%M%S')
            filename = f"{prefix}_{timestamp}.csv"

        if not Utils.validate_file_path(filename):
            return None

        try:
            frame.to_csv(filename)
            print(f"Exported {len(frame)} rows to {filename}")
            return filename
        except OSError as e:
            print(f"Error exporting to CSV: {e}")
            return None

    @staticmethod
    def validate_file_path(path):
        """Validate and create directory if needed for a file path"""
        directory = os.path.dirname(path)
        if directory and not os.path.exists(directory):
            try:
                os.makedirs(directory)
                return True
            except OSError as e:
                print(f"Error creating directory {directory}: {e}")
                return False
        return True
