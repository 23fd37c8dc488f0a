"""
File Storage Utilities
Handle JSON file operations for the explorer's computation history
"""
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import streamlit as st

from config.settings import HIST_FILE, MAX_HISTORY_ITEMS

logger = logging.getLogger(__name__)


class FileStorage:
    """Handles file-based data persistence"""

    @staticmethod
    def load_history(path: Optional[Path] = None) -> List[Dict]:
        """Load the computation history from file"""
        path = path or HIST_FILE
        try:
            if path.exists():
                with open(path, 'r', encoding='utf-8') as f:
                    return json.load(f)
        except Exception as e:
            logger.warning("could not load history from %s: %s", path, e)
            st.error(f"Error loading history: {e}")

        return []

    @staticmethod
    def save_history(history: List[Dict], path: Optional[Path] = None) -> bool:
        """Save the history, keeping the newest MAX_HISTORY_ITEMS entries"""
        path = path or HIST_FILE
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(history[-MAX_HISTORY_ITEMS:], f, ensure_ascii=False, indent=2, sort_keys=True)
            return True
        except Exception as e:
            logger.warning("could not save history to %s: %s", path, e)
            st.error(f"Error saving history: {e}")
            return False

    @staticmethod
    def record(kind: str, graph: str, result: Dict, history: List[Dict], path: Optional[Path] = None) -> bool:
        """Append one computation to the history and persist it"""
        history.append({
            'kind': kind,
            'graph': graph,
            'timestamp': datetime.now().isoformat(timespec='seconds'),
            'result': result,
        })
        return FileStorage.save_history(history, path)
