package evo.shop;

@javax.persistence.Entity
public class Item {
    private String id;
    private String label;
    private double price;
}
