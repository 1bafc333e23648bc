"""CLI components: argument resolution and subcommand handlers"""
