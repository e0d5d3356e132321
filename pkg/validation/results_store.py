#!/usr/bin/env python3
"""
SQLite store for rf tables; every row is re-verified when loaded back.
"""

import hashlib
import json
import logging
import sqlite3
from typing import Dict, List, Optional, Tuple

from core.errors import CertificateError, HallGroupsError
from core.hall_group import evaluate_text, project_to_lamplighter
from core.settings import get_settings
from separation.witnesses import verify_witness, witness_from_record
from .rf_harness import ExperimentConfig, RfTableRow, TABLE_LABEL

logger = logging.getLogger(__name__)


def compute_run_id(config: ExperimentConfig, version: str, rows: List[RfTableRow]) -> str:
    """Same config, version and rows give the same id"""
    payload = json.dumps([row.to_record() for row in rows], sort_keys=True)
    return hashlib.sha256(f"{config.config_hash()}{version}{payload}".encode()).hexdigest()[:16]


def verify_row(record: Dict, config: ExperimentConfig) -> RfTableRow:
    """Rebuild a stored row and check that its witness still separates its element"""
    try:
        witness = witness_from_record(record["witness"], config.params)
        g = evaluate_text(record["worst_element"], config.spec())
        if config.group == "gint" and not g.is_central:
            g = project_to_lamplighter(g)
        check = verify_witness(g, witness)
    except (HallGroupsError, KeyError, ValueError) as e:
        raise CertificateError(f"row n={record.get('n')} cannot be rebuilt: {e}") from e
    if not check.nontrivial:
        raise CertificateError(f"row n={record['n']}: {record['worst_element']} dies in the witness")
    if check.order != int(record["order"]):
        raise CertificateError(f"row n={record['n']}: order {check.order} != stored {record['order']}")
    return RfTableRow(int(record["n"]), record["worst_element"], witness.kind, check.order,
                      witness.to_record(), record.get("label", TABLE_LABEL))


class ResultsStore:
    """Experiment runs and their table rows"""

    def __init__(self, db_path: Optional[str] = None):
        self.db_path = db_path or get_settings().results_db
        self.conn = sqlite3.connect(self.db_path)
        self._create_tables()

    def _create_tables(self):
        self.conn.execute('''
            CREATE TABLE IF NOT EXISTS experiment_runs (
                run_id TEXT PRIMARY KEY,
                timestamp TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                version TEXT,
                config_hash TEXT,
                config TEXT
            )
        ''')

        self.conn.execute('''
            CREATE TABLE IF NOT EXISTS table_rows (
                run_id TEXT NOT NULL,
                n INTEGER NOT NULL,
                worst_element TEXT NOT NULL,
                witness_kind TEXT NOT NULL,
                quotient_order TEXT NOT NULL,
                witness TEXT NOT NULL,
                label TEXT,
                PRIMARY KEY (run_id, n)
            )
        ''')

        self.conn.commit()

    def save_run(self, config: ExperimentConfig, rows: List[RfTableRow], version: str) -> str:
        run_id = compute_run_id(config, version, rows)
        self.conn.execute('''
            INSERT OR REPLACE INTO experiment_runs (run_id, version, config_hash, config)
            VALUES (?, ?, ?, ?)
        ''', (run_id, version, config.config_hash(), json.dumps(config.to_config(), sort_keys=True)))
        self.conn.execute("DELETE FROM table_rows WHERE run_id = ?", (run_id,))
        for row in rows:
            # orders overflow SQLite integers quickly
            self.conn.execute('''
                INSERT INTO table_rows
                (run_id, n, worst_element, witness_kind, quotient_order, witness, label)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            ''', (run_id, row.n, row.worst_element, row.witness_kind, str(row.quotient_order),
                  json.dumps(row.witness, sort_keys=True), row.label))
        self.conn.commit()
        logger.info(f"Saved {len(rows)} rows as run {run_id}")
        return run_id

    def list_runs(self) -> List[Dict]:
        cursor = self.conn.execute(
            "SELECT run_id, timestamp, version, config_hash FROM experiment_runs ORDER BY timestamp")
        return [dict(zip([col[0] for col in cursor.description], row)) for row in cursor]

    def load_run(self, run_id: str) -> Tuple[ExperimentConfig, List[RfTableRow]]:
        found = self.conn.execute(
            "SELECT config FROM experiment_runs WHERE run_id = ?", (run_id,)).fetchone()
        if found is None:
            raise CertificateError(f"no run {run_id}")
        config = ExperimentConfig.from_config(json.loads(found[0]))

        cursor = self.conn.execute('''
            SELECT n, worst_element, quotient_order, witness, label
            FROM table_rows WHERE run_id = ? ORDER BY n
        ''', (run_id,))
        rows = []
        for n, element, order, witness, label in cursor:
            record = {"n": n, "worst_element": element, "order": int(order),
                      "witness": json.loads(witness), "label": label}
            rows.append(verify_row(record, config))
        logger.info(f"Loaded and re-verified {len(rows)} rows of run {run_id}")
        return config, rows

    def close(self):
        self.conn.close()


def generate_report(config: ExperimentConfig, rows: List[RfTableRow]) -> str:
    lines = ["=" * 60, f"RF TABLE ({TABLE_LABEL})", "=" * 60,
             f"\nGroup: {config.group}   witness family: {config.witness_family}",
             f"Config hash: {config.config_hash()}", ""]
    lines.append(f"  {'n':>3}  {'order':>14}  {'kind':<12} worst element")
    for row in rows:
        lines.append(f"  {row.n:>3}  {row.quotient_order:>14}  {row.witness_kind:<12} {row.worst_element}")
    if not rows:
        lines.append("  (no rows)")
    lines.append("=" * 60)
    return "\n".join(lines)
