package evo.billing;

@lombok.Data
public class Item {
    private String id;
    private String label;
    private double price;
}
